#include "sidlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "sidlab/error.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/rng.hpp"

namespace sidlab {

namespace {

// Orthogonal projection onto {X symmetric, X 1 = n d 1}. Entries are
// written pairwise so the output is bitwise symmetric.
Matrix<double> project_affine(const Matrix<double> &x, double d) {
  const std::size_t n = x.size();
  Matrix<double> sym(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      sym(i, j) = sym(j, i) = 0.5 * (x(i, j) + x(j, i));
  const double target = static_cast<double>(n) * d;
  std::vector<double> r(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row += sym(i, j);
    r[i] = row - target;
    total += r[i];
  }
  const double nd = static_cast<double>(n);
  std::vector<double> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = (r[i] - total / (2.0 * nd)) / nd;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      sym(i, j) = sym(j, i) = sym(i, j) - (a[i] + a[j]);
  return sym;
}

Matrix<double> clamp_box(const Matrix<double> &x) {
  return x.map([](double v) { return std::clamp(v, 0.0, 1.0); });
}

} // namespace

double regular_residual(const Matrix<double> &a, double d) {
  const std::size_t n = a.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row += a(i, j);
    worst = std::max(worst, std::abs(row - static_cast<double>(n) * d));
  }
  return worst;
}

Matrix<double> project_regular(const Matrix<double> &a, double d, const ProjectionOptions &options) {
  if (!(d >= 0.0 && d <= 1.0))
    throw Error(ErrorCode::OutOfRange, "regular projection needs d in [0,1]");
  const std::size_t n = a.size();
  Matrix<double> x = a;
  Matrix<double> p(n, 0.0), q(n, 0.0);
  double residual = 0.0;
  for (int it = 0; it < options.max_iterations; ++it) {
    Matrix<double> shifted(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        shifted(i, j) = x(i, j) + p(i, j);
    Matrix<double> y = project_affine(shifted, d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        p(i, j) = shifted(i, j) - y(i, j);
        shifted(i, j) = y(i, j) + q(i, j);
      }
    x = clamp_box(shifted);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        q(i, j) = shifted(i, j) - x(i, j);
    residual = regular_residual(x, d);
    if (residual <= options.tolerance)
      return x;
  }
  throw Error(ErrorCode::ProjectionNonconvergence,
              "regular projection did not converge, residual " + std::to_string(residual));
}

StepGraphon project_regular(const Matrix<double> &a, const Rational &d,
                            const ProjectionOptions &options) {
  return StepGraphon::from_floats(project_regular(a, d.get_d(), options));
}

Matrix<Rational> affine_regular_correction(const Matrix<Rational> &x, const Rational &d) {
  const std::size_t n = x.size();
  const Rational nd(static_cast<long>(n));
  Matrix<Rational> sym(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      sym(i, j) = sym(j, i) = (x(i, j) + x(j, i)) / 2;
  std::vector<Rational> r(n);
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      row += sym(i, j);
    r[i] = row - nd * d;
    total += r[i];
  }
  std::vector<Rational> a(n);
  for (std::size_t i = 0; i < n; ++i)
    a[i] = (r[i] - total / (2 * nd)) / nd;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      sym(i, j) = sym(j, i) = sym(i, j) - a[i] - a[j];
  return sym;
}

std::optional<ViolationCertificate> certify_violation(const Graph &h, const Matrix<double> &w,
                                                      const Rational &d,
                                                      std::uint64_t max_denominator) {
  const std::size_t n = w.size();
  Matrix<Rational> rounded(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      rounded(i, j) = rounded(j, i) = approximate(w(i, j), max_denominator);
  const Matrix<Rational> corrected = affine_regular_correction(rounded, d);
  for (const auto &x : corrected.data())
    if (x < 0 || x > 1)
      return std::nullopt;
  StepGraphon witness(corrected);
  const Rational density = hom_density_value(h, witness.values());
  const Rational baseline = pow(edge_density(witness), static_cast<unsigned>(h.n_edges()));
  if (density - baseline >= 0)
    return std::nullopt;
  return ViolationCertificate{witness, density, baseline, density - baseline};
}

namespace {

struct StartOutcome {
  Matrix<double> w;
  double deficit = 0.0;
  std::vector<double> trace;
};

// d f / d X_ij for f = t_H - t_K2^e, in cell-density units (times n^2).
Matrix<double> deficit_direction(const Graph &h, const Matrix<double> &x) {
  const std::size_t n = x.size();
  const double nn = static_cast<double>(n * n);
  Matrix<double> g = density_gradient(h, x);
  double density = 0.0;
  for (double v : x.data())
    density += v;
  density /= nn;
  const double e = static_cast<double>(h.n_edges());
  const double chain = e > 0 ? e * std::pow(density, e - 1.0) : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // Pair parameters count both (i,j) and (j,i); split evenly.
      const double pair = i == j ? g(i, j) : 0.5 * g(i, j);
      const double base = chain / nn;
      g(i, j) = nn * (pair - base);
    }
  return g;
}

StartOutcome run_start(const Graph &h, std::size_t n, double d, const SearchOptions &opt,
                       std::uint64_t seed) {
  Rng rng(seed);
  Matrix<double> init(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      init(i, j) = init(j, i) = rng.uniform01();
  StartOutcome out;
  out.w = project_regular(init, d, opt.projection);
  out.deficit = sidorenko_deficit(h, out.w);
  out.trace.push_back(out.deficit);
  const double nn = static_cast<double>(n * n);
  double step = opt.initial_step;
  for (int it = 0; it < opt.iters; ++it) {
    const Matrix<double> dir = deficit_direction(h, out.w);
    bool accepted = false;
    while (step > 1e-12) {
      Matrix<double> trial(n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          trial(i, j) = out.w(i, j) - step * dir(i, j);
      Matrix<double> next = project_regular(trial, d, opt.projection);
      double predicted = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          predicted += dir(i, j) * (next(i, j) - out.w(i, j)) / nn;
      const double value = sidorenko_deficit(h, next);
      if (value <= out.deficit + opt.sufficient_decrease * predicted && value <= out.deficit) {
        const bool stalled = out.deficit - value < 1e-16;
        out.w = std::move(next);
        out.deficit = value;
        out.trace.push_back(value);
        accepted = !stalled;
        step = std::min(step * 2.0, opt.initial_step * 64.0);
        break;
      }
      step *= opt.armijo_factor;
    }
    if (!accepted)
      break;
  }
  return out;
}

} // namespace

SearchResult search_counterexample(const Graph &h, std::size_t n, const Rational &d,
                                   const SearchOptions &options) {
  if (!is_bipartite(h))
    throw Error(ErrorCode::InvalidGraph, "counterexample search targets bipartite graphs");
  if (n < 1 || options.starts < 1 || options.iters < 0)
    throw Error(ErrorCode::OutOfRange, "search needs n >= 1 and at least one start");
  if (d < 0 || d > 1)
    throw Error(ErrorCode::OutOfRange, "search degree must lie in [0,1]");
  const double df = d.get_d();
  std::vector<std::optional<StartOutcome>> outcomes(options.starts);
  auto run_range = [&](int begin, int end) {
    for (int s = begin; s < end; ++s)
      outcomes[s] = run_start(h, n, df, options, derive_seed(options.seed, s));
  };
  const unsigned jobs =
      std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(options.starts)));
  if (jobs == 1) {
    run_range(0, options.starts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (options.starts + static_cast<int>(jobs) - 1) / static_cast<int>(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
      const int begin = static_cast<int>(j) * chunk;
      const int end = std::min(options.starts, begin + chunk);
      if (begin < end)
        pool.emplace_back(run_range, begin, end);
    }
    for (auto &t : pool)
      t.join();
  }

  int best = 0;
  for (int s = 1; s < options.starts; ++s)
    if (outcomes[s]->deficit < outcomes[best]->deficit)
      best = s;
  StartOutcome &win = *outcomes[best];
  SearchResult result{StepGraphon::from_floats(win.w), win.deficit, std::move(win.trace),
                      options.starts, best, options.seed, std::nullopt};
  if (result.best_deficit < options.claim_threshold)
    result.certificate = certify_violation(h, win.w, d, options.max_denominator);
  return result;
}

} // namespace sidlab
