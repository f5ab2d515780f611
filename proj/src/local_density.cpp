#include "sidlab/local_density.hpp"

#include <algorithm>
#include <thread>

#include "sidlab/error.hpp"
#include "sidlab/rng.hpp"

namespace sidlab {

const char *to_string(SearchMethod m) {
  switch (m) {
  case SearchMethod::Corners:
    return "corners";
  case SearchMethod::Grid:
    return "grid";
  case SearchMethod::Descent:
    return "descent";
  }
  return "unknown";
}

double quadratic_deficit(const Matrix<double> &a, double d, std::span<const double> s) {
  const std::size_t n = a.size();
  if (s.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "witness length differs from step count");
  double quad = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mass += s[i];
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      row += a(i, j) * s[j];
    quad += s[i] * row;
  }
  const double nn = static_cast<double>(n * n);
  return quad / nn - d * mass * mass / nn;
}

Rational quadratic_deficit_exact(const Matrix<Rational> &a, const Rational &d,
                                 std::span<const double> s) {
  const std::size_t n = a.size();
  if (s.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "witness length differs from step count");
  std::vector<Rational> x;
  x.reserve(n);
  for (double v : s)
    x.push_back(from_double(v));
  Rational quad = 0, mass = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mass += x[i];
    Rational row = 0;
    for (std::size_t j = 0; j < n; ++j)
      row += a(i, j) * x[j];
    quad += x[i] * row;
  }
  const Rational nn(static_cast<long>(n * n));
  return (quad - d * mass * mass) / nn;
}

namespace {

struct Candidate {
  double value = 0.0;
  std::vector<double> s;
  SearchMethod method = SearchMethod::Corners;
};

// Unnormalized form n^2 q(s) = s^T A s - d (sum s)^2, walked by Gray code.
Candidate search_corners(const Matrix<double> &a, double d) {
  const std::size_t n = a.size();
  std::vector<double> as(n, 0.0);
  std::vector<char> bits(n, 0);
  double quad = 0.0, mass = 0.0;
  Candidate best{0.0, std::vector<double>(n, 0.0), SearchMethod::Corners};
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const std::size_t flip = static_cast<std::size_t>(__builtin_ctzll(step));
    const double sign = bits[flip] ? -1.0 : 1.0;
    // quad changes by 2 sign (As)_flip + A_ff.
    quad += sign * 2.0 * as[flip] + a(flip, flip);
    for (std::size_t i = 0; i < n; ++i)
      as[i] += sign * a(i, flip);
    mass += sign;
    bits[flip] ^= 1;
    const double value = quad - d * mass * mass;
    if (value < best.value) {
      best.value = value;
      for (std::size_t i = 0; i < n; ++i)
        best.s[i] = bits[i];
    }
  }
  best.value /= static_cast<double>(n * n);
  return best;
}

Candidate search_grid(const Matrix<double> &a, double d, int denominator) {
  const std::size_t n = a.size();
  std::vector<int> digits(n, 0);
  std::vector<double> s(n, 0.0);
  Candidate best{0.0, s, SearchMethod::Grid};
  while (true) {
    for (std::size_t i = 0; i < n; ++i)
      s[i] = static_cast<double>(digits[i]) / denominator;
    const double value = quadratic_deficit(a, d, s);
    if (value < best.value) {
      best.value = value;
      best.s = s;
    }
    std::size_t p = 0;
    while (p < n && ++digits[p] > denominator)
      digits[p++] = 0;
    if (p == n)
      break;
  }
  return best;
}

Candidate descend(const Matrix<double> &a, double d, std::vector<double> s, double step, int iters) {
  const std::size_t n = a.size();
  std::vector<double> grad(n);
  for (int it = 0; it < iters; ++it) {
    double mass = 0.0;
    for (double v : s)
      mass += v;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        row += a(i, j) * s[j];
      grad[i] = 2.0 * row - 2.0 * d * mass;
    }
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = std::clamp(s[i] - step * grad[i], 0.0, 1.0);
      moved |= next != s[i];
      s[i] = next;
    }
    if (!moved)
      break;
  }
  const double value = quadratic_deficit(a, d, s);
  return {value, std::move(s), SearchMethod::Descent};
}

Candidate search_descent(const Matrix<double> &a, double d, const LocalDensityConfig &cfg) {
  const std::size_t n = a.size();
  const int starts = std::max(0, cfg.descent_starts);
  std::vector<Candidate> results(starts);
  auto run_range = [&](int begin, int end) {
    for (int k = begin; k < end; ++k) {
      Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
      std::vector<double> s(n);
      for (auto &v : s)
        v = rng.uniform01();
      results[k] = descend(a, d, std::move(s), cfg.descent_step, cfg.descent_iters);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(starts)));
  if (jobs <= 1) {
    run_range(0, starts);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (starts + static_cast<int>(jobs) - 1) / static_cast<int>(jobs);
    for (unsigned j = 0; j < jobs; ++j) {
      const int begin = static_cast<int>(j) * chunk;
      const int end = std::min(starts, begin + chunk);
      if (begin < end)
        pool.emplace_back(run_range, begin, end);
    }
    for (auto &t : pool)
      t.join();
  }
  Candidate best{0.0, std::vector<double>(n, 0.0), SearchMethod::Descent};
  for (auto &c : results) // first minimum wins: deterministic tie-break
    if (c.value < best.value)
      best = std::move(c);
  return best;
}

} // namespace

LocalDensityReport local_density_deficit(const StepGraphon &w, const Rational &d,
                                         const LocalDensityConfig &config) {
  if (d < 0 || d > 1)
    throw Error(ErrorCode::OutOfRange, "target density must lie in [0,1]");
  const std::size_t n = w.n();
  const Matrix<double> &a = w.float_values();
  const double df = d.get_d();

  // s = 0 (lambda(S) = 0) is the baseline with deficit 0.
  Candidate best{0.0, std::vector<double>(n, 0.0), SearchMethod::Corners};
  auto consider = [&](Candidate c) {
    if (c.value < best.value)
      best = std::move(c);
  };
  if (static_cast<int>(n) <= config.corner_max_n && n < 63)
    consider(search_corners(a, df));
  if (static_cast<int>(n) <= config.grid_max_n && config.grid_denominator > 0)
    consider(search_grid(a, df, config.grid_denominator));
  if (config.descent_starts > 0)
    consider(search_descent(a, df, config));

  LocalDensityReport out;
  out.target_d = d;
  out.method = best.method;
  out.witness = best.s;
  const Rational exact = quadratic_deficit_exact(w.values(), d, out.witness);
  out.deficit = exact.get_d();
  out.certified_violation = exact < 0;
  return out;
}

ReiherCheck weighted_reiher_check(const StepGraphon &w, const Rational &d,
                                  std::span<const double> f, double tol) {
  const std::size_t n = w.n();
  if (f.size() != n)
    throw Error(ErrorCode::ShapeMismatch, "weight vector length differs from step count");
  for (double v : f)
    if (!(v >= 0.0 && v <= 1.0))
      throw Error(ErrorCode::OutOfRange, "weight function values must lie in [0,1]");
  const auto &a = w.float_values();
  double lhs = 0.0, mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mass += f[i];
    for (std::size_t j = 0; j < n; ++j)
      lhs += f[i] * f[j] * a(i, j);
  }
  const double nn = static_cast<double>(n * n);
  ReiherCheck out;
  out.lhs = lhs / nn;
  out.rhs = d.get_d() * mass * mass / nn;
  out.pass = out.lhs >= out.rhs - tol;
  return out;
}

} // namespace sidlab
