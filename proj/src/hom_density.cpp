#include "sidlab/hom_density.hpp"

#include <cmath>

#include "sidlab/error.hpp"

namespace sidlab {

const char *to_string(EvalMode m) { return m == EvalMode::Exact ? "exact" : "float"; }

DensityValue hom_density(const Graph &h, const StepGraphon &w, const DensityOptions &options) {
  DensityValue out;
  out.mode = options.mode;
  out.vH = h.n_vertices() - static_cast<int>(options.pins.size());
  if (options.mode == EvalMode::Exact) {
    out.exact = hom_density_value(h, w.values(), options.pins, options.strategy, options.limits);
    out.approx = out.exact.get_d();
  } else {
    out.approx =
        hom_density_value(h, w.float_values(), options.pins, options.strategy, options.limits);
  }
  return out;
}

EliminationOrder elimination_order(const Graph &h, const PinMap &pins) {
  std::vector<char> eliminable(h.n_vertices(), 1);
  for (auto [v, step] : pins)
    if (v >= 0 && v < h.n_vertices())
      eliminable[v] = 0;
  std::vector<Edge> edges;
  for (auto [u, v] : h.edges())
    if (eliminable[u] && eliminable[v])
      edges.emplace_back(u, v);
  return min_fill_order(Graph(h.n_vertices(), edges), eliminable);
}

DeficitValue deficit(const Graph &h, const StepGraphon &w, const Baseline &baseline,
                     EvalMode mode, const EngineLimits &limits) {
  const auto e = static_cast<unsigned>(h.n_edges());
  DeficitValue out;
  if (mode == EvalMode::Exact) {
    const Rational t = hom_density_value(h, w.values(), {}, Strategy::Eliminate, limits);
    const Rational base =
        baseline.kind == Baseline::Kind::Sidorenko ? edge_density(w) : baseline.d;
    out.exact = t - pow(base, e);
    out.value = out.exact->get_d();
  } else {
    const double t = hom_density_value(h, w.float_values(), {}, Strategy::Eliminate, limits);
    const double base = baseline.kind == Baseline::Kind::Sidorenko ? edge_density(w).get_d()
                                                                   : baseline.d.get_d();
    out.value = t - std::pow(base, static_cast<double>(e));
  }
  return out;
}

double sidorenko_deficit(const Graph &h, const Matrix<double> &a, const EngineLimits &limits) {
  const std::size_t n = a.size();
  double density = 0.0;
  for (double x : a.data())
    density += x;
  density /= static_cast<double>(n * n);
  const double t = hom_density_value(h, a, {}, Strategy::Eliminate, limits);
  return t - std::pow(density, static_cast<double>(h.n_edges()));
}

namespace {

template <typename T>
T clique_contraction(int h, const Matrix<T> &pair_weight, const EngineLimits &limits) {
  const Graph clique = complete_graph(h);
  return hom_density_value(clique, pair_weight, {}, Strategy::Eliminate, limits);
}

} // namespace

DensityValue holder_lower_bound(const Graph &h, const ReplacementSpec &spec, const StepGraphon &w,
                                const EngineLimits &limits) {
  spec.check_matches(h);
  const int hv = h.n_vertices();
  const auto alpha = spec.alpha(hv);
  const std::size_t n = w.n();
  bool integral = true;
  for (const auto &[k, a] : alpha) {
    if (a < 0)
      throw Error(ErrorCode::OutOfRange, "negative exponent in clique bound");
    if (a.get_den() != 1)
      integral = false;
  }

  DensityValue out;
  out.vH = hv;
  if (integral) {
    Matrix<Rational> weight(n, Rational(1));
    for (const auto &[k, a] : alpha) {
      const auto power = kernel_power(w.values(), k);
      const unsigned exponent = static_cast<unsigned>(a.get_num().get_ui());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          weight(i, j) *= pow(power(i, j), exponent);
    }
    out.mode = EvalMode::Exact;
    out.exact = clique_contraction(hv, weight, limits);
    out.approx = out.exact.get_d();
    return out;
  }
  Matrix<double> weight(n, 1.0);
  for (const auto &[k, a] : alpha) {
    const auto power = kernel_power(w.float_values(), k);
    const double exponent = a.get_d();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double base = power(i, j);
        // 0^0 = 1; alpha_k > 0 here since zero totals never appear.
        weight(i, j) *= exponent == 0.0 ? 1.0 : std::pow(base, exponent);
      }
  }
  out.mode = EvalMode::Float;
  out.approx = clique_contraction(hv, weight, limits);
  return out;
}

} // namespace sidlab
