#pragma once

#include <cstddef>
#include <map>
#include <optional>

#include "sidlab/contraction.hpp"
#include "sidlab/graphs.hpp"
#include "sidlab/step_graphon.hpp"

namespace sidlab {

enum class EvalMode { Exact, Float };
enum class Strategy { Eliminate, BruteForce };

const char *to_string(EvalMode m);

/// t_H(W) with its evaluation mode; `exact` is meaningful in exact mode
/// only, `approx` is always filled.
struct DensityValue {
  EvalMode mode = EvalMode::Exact;
  Rational exact;
  double approx = 0.0;
  int vH = 0; // exponent of the 1/n normalization

  double as_double() const { return mode == EvalMode::Exact ? exact.get_d() : approx; }
};

using PinMap = std::map<Vertex, std::size_t>;

struct DensityOptions {
  EvalMode mode = EvalMode::Exact;
  Strategy strategy = Strategy::Eliminate;
  PinMap pins;
  EngineLimits limits;
};

// Brute force is refused above this many assignments.
inline constexpr std::size_t kBruteForceLimit = 10'000'000;

namespace detail {

template <typename T>
T brute_force_sum(const Graph &h, const Matrix<T> &a, const std::vector<std::optional<std::size_t>> &pins) {
  const int v = h.n_vertices();
  const std::size_t n = a.size();
  std::vector<Vertex> free_vars;
  for (Vertex x = 0; x < v; ++x)
    if (!pins[x])
      free_vars.push_back(x);
  std::size_t total = 1;
  for (std::size_t i = 0; i < free_vars.size(); ++i) {
    if (total > kBruteForceLimit / n)
      throw Error(ErrorCode::OutOfRange, "brute force over more than 1e7 assignments");
    total *= n;
  }
  std::vector<std::size_t> phi(v, 0);
  for (Vertex x = 0; x < v; ++x)
    if (pins[x])
      phi[x] = *pins[x];
  T sum(0);
  T prod;
  for (std::size_t idx = 0; idx < total; ++idx) {
    prod = T(1);
    for (auto [p, q] : h.edges()) {
      const T &val = a(phi[p], phi[q]);
      if (val == 0) {
        prod = T(0);
        break;
      }
      prod *= val;
    }
    sum += prod;
    for (std::size_t k = free_vars.size(); k-- > 0;) {
      if (++phi[free_vars[k]] < n)
        break;
      phi[free_vars[k]] = 0;
    }
  }
  return sum;
}

inline std::vector<std::optional<std::size_t>> pin_vector(const Graph &h, const PinMap &pins,
                                                           std::size_t n) {
  std::vector<std::optional<std::size_t>> out(h.n_vertices());
  for (auto [v, step] : pins) {
    if (v < 0 || v >= h.n_vertices())
      throw Error(ErrorCode::PinCollision, "pinned vertex not in H");
    if (step >= n)
      throw Error(ErrorCode::OutOfRange, "pin step out of range");
    out[v] = step;
  }
  return out;
}

template <typename T> T power_of(std::size_t n, int exponent) {
  T out(1);
  for (int i = 0; i < exponent; ++i)
    out *= T(static_cast<long>(n));
  return out;
}

} // namespace detail

/// Normalized (pinned) homomorphism density over a raw weight grid.
template <typename T>
T hom_density_value(const Graph &h, const Matrix<T> &a, const PinMap &pins = {},
                    Strategy strategy = Strategy::Eliminate, const EngineLimits &limits = {},
                    EliminationOrder *order_out = nullptr) {
  const std::size_t n = a.size();
  const auto pin_vec = detail::pin_vector(h, pins, n);
  T raw;
  if (strategy == Strategy::BruteForce) {
    raw = detail::brute_force_sum(h, a, pin_vec);
  } else {
    std::vector<PairFactor<T>> factors;
    for (auto [u, v] : h.edges())
      factors.push_back({u, v, &a});
    raw = contract<T>(h.n_vertices(), n, factors, pin_vec, {}, limits, order_out).values[0];
  }
  return raw / detail::power_of<T>(n, h.n_vertices() - static_cast<int>(pins.size()));
}

DensityValue hom_density(const Graph &h, const StepGraphon &w, const DensityOptions &options = {});

EliminationOrder elimination_order(const Graph &h, const PinMap &pins = {});

/// Partial derivatives of t_H with respect to the symmetric entries of A:
/// off-diagonal (u, v) treats A_uv = A_vu as one parameter.
template <typename T>
Matrix<T> density_gradient(const Graph &h, const Matrix<T> &a, const EngineLimits &limits = {}) {
  const std::size_t n = a.size();
  Matrix<T> grad(n, T(0));
  const auto &edges = h.edges();
  std::vector<std::optional<std::size_t>> no_pins(h.n_vertices());
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    std::vector<PairFactor<T>> factors;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (e != skip)
        factors.push_back({edges[e].first, edges[e].second, &a});
    const auto table = contract<T>(h.n_vertices(), n, factors, no_pins,
                                   {edges[skip].first, edges[skip].second}, limits);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        if (u == v)
          grad(u, u) += table.values[u * n + u];
        else
          grad(u, v) += table.values[u * n + v] + table.values[v * n + u];
      }
  }
  const T scale = detail::power_of<T>(n, h.n_vertices());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      grad(u, v) /= scale;
  return grad;
}

struct Baseline {
  enum class Kind { Sidorenko, Knrs };
  Kind kind = Kind::Sidorenko;
  Rational d = 0; // knrs only

  static Baseline sidorenko() { return {}; }
  static Baseline knrs(Rational d) { return {Kind::Knrs, std::move(d)}; }
};

struct DeficitValue {
  double value = 0.0;            // negative = inequality violated
  std::optional<Rational> exact; // exact mode only
};

// sidorenko: t_H(W) - t_K2(W)^e(H); knrs(d): t_H(W) - d^e(H).
DeficitValue deficit(const Graph &h, const StepGraphon &w, const Baseline &baseline,
                     EvalMode mode = EvalMode::Float, const EngineLimits &limits = {});

double sidorenko_deficit(const Graph &h, const Matrix<double> &a, const EngineLimits &limits = {});

/// Clique lower bound obtained by averaging the replaced graph over all
/// relabelings of the host: K_h with pair weight prod_k (W^k)^alpha_k.
/// Exact when every alpha_k is an integer, float otherwise.
DensityValue holder_lower_bound(const Graph &h, const ReplacementSpec &spec, const StepGraphon &w,
                                const EngineLimits &limits = {});

} // namespace sidlab
