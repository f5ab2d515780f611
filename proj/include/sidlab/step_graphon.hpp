#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sidlab/contraction.hpp"
#include "sidlab/graphs.hpp"
#include "sidlab/matrix.hpp"
#include "sidlab/rational.hpp"

namespace sidlab {

/// Symmetric step function on an n x n grid of equal-measure cells with
/// values in [0, 1]. Exact rationals are authoritative; the float view is
/// derived once at construction.
class StepGraphon {
public:
  explicit StepGraphon(Matrix<Rational> values);

  // Exact binary conversion of each double.
  static StepGraphon from_floats(const Matrix<double> &values);

  std::size_t n() const noexcept { return values_.size(); }
  const Rational &operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  const Matrix<Rational> &values() const noexcept { return values_; }
  const Matrix<double> &float_values() const noexcept { return floats_; }

  bool operator==(const StepGraphon &other) const { return values_ == other.values_; }

private:
  Matrix<Rational> values_;
  Matrix<double> floats_;
};

Rational edge_density(const StepGraphon &w);

struct RegularityReport {
  std::vector<Rational> row_degrees;
  double spread = 0.0;             // max - min row degree
  std::optional<Rational> degree;  // set iff regular within tolerance

  bool regular() const { return degree.has_value(); }
};

// tol == 0 demands exact equality of the row degrees.
RegularityReport regularity(const StepGraphon &w, double tol = 0.0);

// (U o V)(x, y) = (1/n) sum_z U(x, z) V(z, y)
template <typename T> Matrix<T> kernel_compose(const Matrix<T> &u, const Matrix<T> &v) {
  Matrix<T> out = multiply(u, v);
  const T scale = T(1) / T(static_cast<long>(u.size()));
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < out.size(); ++j)
      out(i, j) *= scale;
  return out;
}

template <typename T> Matrix<T> kernel_power(const Matrix<T> &a, int k) {
  if (k < 1)
    throw Error(ErrorCode::OutOfRange, "kernel power needs k >= 1");
  Matrix<T> out = a;
  for (int i = 1; i < k; ++i)
    out = kernel_compose(out, a);
  return out;
}

template <typename T> Matrix<T> hadamard(const Matrix<T> &a, const Matrix<T> &b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::ShapeMismatch, "hadamard product of differently sized grids");
  Matrix<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      out(i, j) = a(i, j) * b(i, j);
  return out;
}

StepGraphon kernel_power(const StepGraphon &w, int k);
StepGraphon kernel_compose(const StepGraphon &u, const StepGraphon &v);
StepGraphon hadamard(const StepGraphon &a, const StepGraphon &b);

/// Root-pinned homomorphism density of F: entry (x, y) is the integral of
/// the edge weights of F over the non-root variables with the roots held in
/// steps x and y.
template <typename T>
Matrix<T> counting_kernel(const Matrix<T> &a, const RootedGraph &f, const EngineLimits &limits = {}) {
  const Graph &g = f.graph();
  const std::size_t n = a.size();
  std::vector<PairFactor<T>> factors;
  for (auto [u, v] : g.edges())
    factors.push_back({u, v, &a});
  std::vector<std::optional<std::size_t>> pins(g.n_vertices());
  auto table = contract<T>(g.n_vertices(), n, factors, pins, {f.root1(), f.root2()}, limits);
  Matrix<T> out(n);
  T scale(1);
  for (int i = 0; i < g.n_vertices() - 2; ++i)
    scale *= T(static_cast<long>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      out(x, y) = table.values[x * n + y] / scale;
  return out;
}

StepGraphon counting_kernel(const StepGraphon &w, const RootedGraph &f,
                            const EngineLimits &limits = {});

} // namespace sidlab
