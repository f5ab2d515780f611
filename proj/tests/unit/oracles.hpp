#pragma once

// Independent reference computations for the tests. Nothing here calls the
// contraction engine; every value comes from direct enumeration.

#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "sidlab/graphs.hpp"
#include "sidlab/matrix.hpp"
#include "sidlab/rational.hpp"

namespace oracle {

using sidlab::Edge;
using sidlab::Graph;
using sidlab::Matrix;
using sidlab::Rational;

inline Matrix<Rational> rmat(std::initializer_list<std::initializer_list<const char *>> rows) {
  Matrix<Rational> m(rows.size());
  std::size_t i = 0;
  for (const auto &row : rows) {
    std::size_t j = 0;
    for (const char *v : row)
      m(i, j++) = Rational(v);
    ++i;
  }
  return m;
}

inline Matrix<double> dmat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix<double> m(rows.size());
  std::size_t i = 0;
  for (const auto &row : rows) {
    std::size_t j = 0;
    for (double v : row)
      m(i, j++) = v;
    ++i;
  }
  return m;
}

// Calls f(phi) for every map phi: [v] -> [n].
inline void for_each_map(int v, std::size_t n, const std::function<void(const std::vector<std::size_t> &)> &f) {
  std::vector<std::size_t> phi(v, 0);
  for (;;) {
    f(phi);
    int k = v - 1;
    while (k >= 0 && ++phi[k] == n)
      phi[k--] = 0;
    if (k < 0)
      return;
  }
}

template <typename T> T power_n(std::size_t n, int e) {
  T out(1);
  for (int i = 0; i < e; ++i)
    out *= T(static_cast<long>(n));
  return out;
}

// t_H(W) by summing over all n^v maps.
template <typename T> T density(const Graph &h, const Matrix<T> &a) {
  const std::size_t n = a.size();
  T sum(0);
  for_each_map(h.n_vertices(), n, [&](const std::vector<std::size_t> &phi) {
    T prod(1);
    for (auto [u, v] : h.edges())
      prod *= a(phi[u], phi[v]);
    sum += prod;
  });
  return sum / power_n<T>(n, h.n_vertices());
}

// W^k by enumerating all walks of length k.
inline Matrix<Rational> kernel_power(const Matrix<Rational> &a, int k) {
  const std::size_t n = a.size();
  Matrix<Rational> out(n, Rational(0));
  for (std::size_t x = 0; x < n; ++x)
    for_each_map(k - 1, n, [&](const std::vector<std::size_t> &mid) {
      for (std::size_t y = 0; y < n; ++y) {
        Rational prod = 1;
        std::size_t prev = x;
        for (std::size_t m : mid) {
          prod *= a(prev, m);
          prev = m;
        }
        prod *= a(prev, y);
        out(x, y) += prod;
      }
    });
  const Rational scale = power_n<Rational>(n, k - 1);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      out(x, y) /= scale;
  return out;
}

// W^F by pinning the roots and enumerating the rest.
inline Matrix<Rational> counting_kernel(const Matrix<Rational> &a, const Graph &f, int r1, int r2) {
  const std::size_t n = a.size();
  const int v = f.n_vertices();
  Matrix<Rational> out(n, Rational(0));
  for_each_map(v, n, [&](const std::vector<std::size_t> &phi) {
    Rational prod = 1;
    for (auto [p, q] : f.edges())
      prod *= a(phi[p], phi[q]);
    out(phi[r1], phi[r2]) += prod;
  });
  const Rational scale = power_n<Rational>(n, v - 2);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      out(x, y) /= scale;
  return out;
}

// Lower bound of the uniformized replacement: integral over [n]^h of
// prod_{i<j} prod_k (W^k(x_i,x_j))^{alpha_k}.
inline double holder_bound(int h, const std::vector<std::pair<int, double>> &alpha,
                           const Matrix<Rational> &a) {
  const std::size_t n = a.size();
  std::vector<Matrix<Rational>> powers;
  for (auto [k, al] : alpha)
    powers.push_back(kernel_power(a, k));
  double sum = 0.0;
  for_each_map(h, n, [&](const std::vector<std::size_t> &phi) {
    double prod = 1.0;
    for (int i = 0; i < h; ++i)
      for (int j = i + 1; j < h; ++j)
        for (std::size_t c = 0; c < alpha.size(); ++c) {
          const double base = powers[c](phi[i], phi[j]).get_d();
          if (alpha[c].second != 0.0)
            prod *= std::pow(base, alpha[c].second);
        }
    sum += prod;
  });
  return sum / std::pow(static_cast<double>(n), h);
}

// min over the grid {0, 1/den, ..., 1}^n of (1/n^2) s'As - d (sum s / n)^2.
inline double grid_local_deficit(const Matrix<double> &a, double d, int den,
                                 std::vector<double> *argmin = nullptr) {
  const std::size_t n = a.size();
  double best = 0.0;
  for_each_map(static_cast<int>(n), static_cast<std::size_t>(den) + 1,
               [&](const std::vector<std::size_t> &idx) {
                 std::vector<double> s(n);
                 double mass = 0.0;
                 for (std::size_t i = 0; i < n; ++i)
                   mass += s[i] = static_cast<double>(idx[i]) / den;
                 double quad = 0.0;
                 for (std::size_t i = 0; i < n; ++i)
                   for (std::size_t j = 0; j < n; ++j)
                     quad += s[i] * s[j] * a(i, j);
                 const double nn = static_cast<double>(n);
                 const double q = quad / (nn * nn) - d * (mass / nn) * (mass / nn);
                 if (q < best) {
                   best = q;
                   if (argmin)
                     *argmin = s;
                 }
               });
  return best;
}

inline Matrix<Rational> random_rational_matrix(std::size_t n, std::uint64_t seed, int den = 6) {
  std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
  auto next = [&] {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return state >> 33;
  };
  Matrix<Rational> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational v(static_cast<long>(next() % (den + 1)), den);
      v.canonicalize();
      m(i, j) = m(j, i) = v;
    }
  return m;
}

} // namespace oracle
