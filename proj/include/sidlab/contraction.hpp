#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sidlab/error.hpp"
#include "sidlab/graphs.hpp"
#include "sidlab/matrix.hpp"

namespace sidlab {

// Guards on intermediate factor size during variable elimination.
struct EngineLimits {
  int max_width = 8;                           // intermediate arity <= max_width + 1
  std::size_t max_table_entries = std::size_t{1} << 24;
};

/// Elimination order with the arity (scope size including the eliminated
/// variable) of the factor formed at each step.
struct EliminationOrder {
  std::vector<Vertex> order;
  std::vector<int> arity;

  int max_arity() const {
    int m = 0;
    for (int a : arity)
      m = a > m ? a : m;
    return m;
  }
  int induced_width() const { return max_arity() > 0 ? max_arity() - 1 : 0; }
};

// Greedy min-fill order over the eliminable vertices of an interaction
// graph; ties broken by smaller degree, then smaller index.
EliminationOrder min_fill_order(const Graph &interactions, const std::vector<char> &eliminable);

template <typename T> struct PairFactor {
  Vertex u;
  Vertex v;
  const Matrix<T> *weights; // weights(x_u, x_v)
};

/// Table over `vars` (first variable most significant), raw sums.
template <typename T> struct Table {
  std::vector<Vertex> vars;
  std::vector<T> values;
};

namespace detail {

template <typename T> struct Factor {
  std::vector<Vertex> vars; // sorted
  std::vector<T> table;
};

inline std::size_t checked_power(std::size_t base, std::size_t exp, std::size_t cap) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > cap / (base ? base : 1))
      throw Error(ErrorCode::ArityOverflow, "intermediate table exceeds entry cap");
    out *= base;
  }
  return out;
}

} // namespace detail

/// Sums prod_f weights_f over all assignments of the non-pinned, non-kept
/// variables (each ranging over [0, domain)), returning a table indexed by
/// the kept variables in the given order. Pinned variables are fixed to
/// their step. The result is unnormalized.
template <typename T>
Table<T> contract(int num_vars, std::size_t domain, const std::vector<PairFactor<T>> &factors,
                  const std::vector<std::optional<std::size_t>> &pins,
                  const std::vector<Vertex> &keep, const EngineLimits &limits = {},
                  EliminationOrder *order_out = nullptr) {
  using detail::Factor;
  if (static_cast<int>(pins.size()) != num_vars)
    throw Error(ErrorCode::ShapeMismatch, "pin vector size differs from variable count");
  std::vector<char> kept(num_vars, 0);
  for (Vertex k : keep) {
    if (k < 0 || k >= num_vars)
      throw Error(ErrorCode::OutOfRange, "kept variable out of range");
    if (pins[k])
      throw Error(ErrorCode::PinCollision, "variable both pinned and kept");
    if (kept[k])
      throw Error(ErrorCode::PinCollision, "variable kept twice");
    kept[k] = 1;
  }
  for (const auto &p : pins)
    if (p && *p >= domain)
      throw Error(ErrorCode::OutOfRange, "pin step out of range");

  T scalar(1);
  std::vector<Factor<T>> pool;
  std::vector<Edge> interaction_edges;
  for (const auto &pf : factors) {
    const Matrix<T> &m = *pf.weights;
    if (m.size() != domain)
      throw Error(ErrorCode::ShapeMismatch, "factor matrix size differs from domain");
    const auto &pu = pins[pf.u];
    const auto &pv = pins[pf.v];
    if (pu && pv) {
      scalar *= m(*pu, *pv);
    } else if (pu || pv) {
      Factor<T> f;
      f.vars = {pu ? pf.v : pf.u};
      f.table.resize(domain);
      for (std::size_t x = 0; x < domain; ++x)
        f.table[x] = pu ? m(*pu, x) : m(x, *pv);
      pool.push_back(std::move(f));
    } else {
      Factor<T> f;
      const bool flip = pf.u > pf.v;
      f.vars = {flip ? pf.v : pf.u, flip ? pf.u : pf.v};
      f.table.resize(domain * domain);
      for (std::size_t a = 0; a < domain; ++a)
        for (std::size_t b = 0; b < domain; ++b)
          f.table[a * domain + b] = flip ? m(b, a) : m(a, b);
      pool.push_back(std::move(f));
      if (pf.u != pf.v)
        interaction_edges.push_back(normalize_edge(pf.u, pf.v));
    }
  }
  std::sort(interaction_edges.begin(), interaction_edges.end());
  interaction_edges.erase(std::unique(interaction_edges.begin(), interaction_edges.end()),
                          interaction_edges.end());

  std::vector<char> eliminable(num_vars, 0);
  for (Vertex v = 0; v < num_vars; ++v)
    eliminable[v] = !pins[v] && !kept[v];
  EliminationOrder order = min_fill_order(Graph(num_vars, interaction_edges), eliminable);
  if (order.induced_width() > limits.max_width)
    throw Error(ErrorCode::ArityOverflow, "elimination width " +
                                              std::to_string(order.induced_width()) +
                                              " exceeds cap " + std::to_string(limits.max_width));

  for (Vertex v : order.order) {
    std::vector<std::size_t> touching;
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (std::binary_search(pool[i].vars.begin(), pool[i].vars.end(), v))
        touching.push_back(i);
    if (touching.empty()) {
      scalar *= T(static_cast<long>(domain));
      continue;
    }
    std::vector<Vertex> scope;
    for (std::size_t i : touching)
      scope.insert(scope.end(), pool[i].vars.begin(), pool[i].vars.end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    const std::size_t full_entries =
        detail::checked_power(domain, scope.size(), limits.max_table_entries);

    std::vector<Vertex> out_vars;
    for (Vertex s : scope)
      if (s != v)
        out_vars.push_back(s);
    Factor<T> out;
    out.vars = out_vars;
    out.table.assign(full_entries / domain, T(0));

    // Position of each factor's variables inside `scope`.
    std::vector<std::vector<std::size_t>> positions;
    for (std::size_t i : touching) {
      std::vector<std::size_t> pos;
      for (Vertex fv : pool[i].vars)
        pos.push_back(std::lower_bound(scope.begin(), scope.end(), fv) - scope.begin());
      positions.push_back(std::move(pos));
    }
    const std::size_t v_pos = std::lower_bound(scope.begin(), scope.end(), v) - scope.begin();

    std::vector<std::size_t> digits(scope.size(), 0);
    T prod(0);
    for (std::size_t idx = 0; idx < full_entries; ++idx) {
      bool zero = false;
      for (std::size_t t = 0; t < touching.size() && !zero; ++t) {
        std::size_t fi = 0;
        for (std::size_t p : positions[t])
          fi = fi * domain + digits[p];
        const T &val = pool[touching[t]].table[fi];
        if (val == 0)
          zero = true;
        else if (t == 0)
          prod = val;
        else
          prod *= val;
      }
      if (!zero) {
        std::size_t oi = 0;
        for (std::size_t p = 0; p < scope.size(); ++p)
          if (p != v_pos)
            oi = oi * domain + digits[p];
        out.table[oi] += prod;
      }
      for (std::size_t p = scope.size(); p-- > 0;) {
        if (++digits[p] < domain)
          break;
        digits[p] = 0;
      }
    }

    std::vector<Factor<T>> next_pool;
    next_pool.reserve(pool.size() - touching.size() + 1);
    for (std::size_t i = 0, t = 0; i < pool.size(); ++i) {
      if (t < touching.size() && touching[t] == i) {
        ++t;
        continue;
      }
      next_pool.push_back(std::move(pool[i]));
    }
    if (out.vars.empty())
      scalar *= out.table[0];
    else
      next_pool.push_back(std::move(out));
    pool = std::move(next_pool);
  }

  // Remaining factors live on kept variables only.
  Table<T> result;
  result.vars = keep;
  const std::size_t entries = detail::checked_power(domain, keep.size(), limits.max_table_entries);
  result.values.assign(entries, scalar);
  if (!pool.empty()) {
    std::vector<std::size_t> digits(keep.size(), 0);
    std::vector<std::vector<std::size_t>> positions;
    for (const auto &f : pool) {
      std::vector<std::size_t> pos;
      for (Vertex fv : f.vars)
        pos.push_back(std::find(keep.begin(), keep.end(), fv) - keep.begin());
      positions.push_back(std::move(pos));
    }
    for (std::size_t idx = 0; idx < entries; ++idx) {
      for (std::size_t t = 0; t < pool.size(); ++t) {
        std::size_t fi = 0;
        for (std::size_t p : positions[t])
          fi = fi * domain + digits[p];
        result.values[idx] *= pool[t].table[fi];
      }
      for (std::size_t p = keep.size(); p-- > 0;) {
        if (++digits[p] < domain)
          break;
        digits[p] = 0;
      }
    }
  }
  if (order_out)
    *order_out = std::move(order);
  return result;
}

} // namespace sidlab
