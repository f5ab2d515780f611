#include "sidlab/step_graphon.hpp"

#include <algorithm>

#include "sidlab/error.hpp"

namespace sidlab {

StepGraphon::StepGraphon(Matrix<Rational> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  if (n == 0)
    throw Error(ErrorCode::OutOfRange, "step graphon needs at least one step");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational &x = values_(i, j);
      if (x < 0 || x > 1)
        throw Error(ErrorCode::OutOfRange, "graphon value outside [0,1] at (" + std::to_string(i) +
                                               "," + std::to_string(j) + ")");
      if (j > i && x != values_(j, i))
        throw Error(ErrorCode::OutOfRange, "graphon values not symmetric at (" +
                                               std::to_string(i) + "," + std::to_string(j) + ")");
    }
  floats_ = values_.map([](const Rational &x) { return x.get_d(); });
}

StepGraphon StepGraphon::from_floats(const Matrix<double> &values) {
  return StepGraphon(values.map([](double x) { return from_double(x); }));
}

Rational edge_density(const StepGraphon &w) {
  Rational sum = 0;
  for (const auto &x : w.values().data())
    sum += x;
  return sum / Rational(static_cast<long>(w.n() * w.n()));
}

RegularityReport regularity(const StepGraphon &w, double tol) {
  if (tol < 0)
    throw Error(ErrorCode::OutOfRange, "regularity tolerance must be >= 0");
  RegularityReport out;
  const std::size_t n = w.n();
  for (std::size_t i = 0; i < n; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      row += w(i, j);
    out.row_degrees.push_back(row / Rational(static_cast<long>(n)));
  }
  auto [lo, hi] = std::minmax_element(out.row_degrees.begin(), out.row_degrees.end());
  const Rational spread = *hi - *lo;
  out.spread = spread.get_d();
  if (spread == 0) {
    out.degree = *lo;
  } else if (tol > 0 && out.spread <= tol) {
    Rational mean = 0;
    for (const auto &d : out.row_degrees)
      mean += d;
    out.degree = mean / Rational(static_cast<long>(n));
  }
  return out;
}

StepGraphon kernel_power(const StepGraphon &w, int k) {
  return StepGraphon(kernel_power(w.values(), k));
}

StepGraphon kernel_compose(const StepGraphon &u, const StepGraphon &v) {
  return StepGraphon(kernel_compose(u.values(), v.values()));
}

StepGraphon hadamard(const StepGraphon &a, const StepGraphon &b) {
  return StepGraphon(hadamard(a.values(), b.values()));
}

StepGraphon counting_kernel(const StepGraphon &w, const RootedGraph &f, const EngineLimits &limits) {
  return StepGraphon(counting_kernel(w.values(), f, limits));
}

} // namespace sidlab
