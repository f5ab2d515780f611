#include "sidlab/generators.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sidlab/error.hpp"
#include "sidlab/rng.hpp"

namespace sidlab {

StepGraphon constant_graphon(std::size_t n, const Rational &d) {
  return StepGraphon(Matrix<Rational>(n, d));
}

StepGraphon circulant_graphon(const std::vector<Rational> &profile) {
  const std::size_t n = profile.size();
  if (n == 0)
    throw Error(ErrorCode::OutOfRange, "circulant profile must be nonempty");
  for (std::size_t k = 1; k < n; ++k)
    if (profile[k] != profile[n - k])
      throw Error(ErrorCode::OutOfRange, "circulant profile is not symmetric");
  Matrix<Rational> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = profile[(i + n - j) % n];
  return StepGraphon(std::move(m));
}

StepGraphon graph_graphon(const Graph &g) {
  Matrix<Rational> m(static_cast<std::size_t>(g.n_vertices()), Rational(0));
  for (auto [u, v] : g.edges())
    m(u, v) = m(v, u) = 1;
  return StepGraphon(std::move(m));
}

Graph random_regular_graph(int n, int deg, std::uint64_t seed) {
  if (n < 1 || deg < 0 || deg >= n || (static_cast<long>(n) * deg) % 2 != 0)
    throw Error(ErrorCode::InfeasibleDegree, "no simple " + std::to_string(deg) +
                                                 "-regular graph on " + std::to_string(n) +
                                                 " vertices");
  const int m = n * deg / 2;
  for (std::uint64_t attempt = 0;; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Vertex> stubs;
    for (Vertex v = 0; v < n; ++v)
      stubs.insert(stubs.end(), deg, v);
    rng.shuffle(stubs);
    std::vector<Edge> edges;
    std::multiset<Edge> present;
    for (int i = 0; i < m; ++i) {
      Edge e = normalize_edge(stubs[2 * i], stubs[2 * i + 1]);
      edges.push_back(e);
      present.insert(e);
    }
    auto bad = [&](const Edge &e) { return e.first == e.second || present.count(e) > 1; };
    const int cap = 200 * std::max(m, 1);
    for (int it = 0; it < cap; ++it) {
      auto it_bad = std::find_if(edges.begin(), edges.end(), bad);
      if (it_bad == edges.end())
        break;
      const std::size_t i = static_cast<std::size_t>(it_bad - edges.begin());
      const auto j = static_cast<std::size_t>(rng.uniform_int(0, m - 1));
      if (i == j)
        continue;
      auto [a, b] = edges[i];
      auto [c, d] = edges[j];
      if (rng.coin())
        std::swap(c, d);
      const Edge e1 = normalize_edge(a, c), e2 = normalize_edge(b, d);
      present.erase(present.find(edges[i]));
      present.erase(present.find(edges[j]));
      if (a == c || b == d || present.count(e1) || present.count(e2) || e1 == e2) {
        present.insert(edges[i]);
        present.insert(edges[j]);
        continue;
      }
      edges[i] = e1;
      edges[j] = e2;
      present.insert(e1);
      present.insert(e2);
    }
    if (std::none_of(edges.begin(), edges.end(), bad))
      return Graph(n, std::move(edges));
  }
}

StepGraphon regular_graph_graphon(int n, int deg, std::uint64_t seed) {
  return graph_graphon(random_regular_graph(n, deg, seed));
}

StepGraphon mixture(const std::vector<Rational> &weights, const std::vector<StepGraphon> &parts) {
  if (weights.size() != parts.size() || parts.empty())
    throw Error(ErrorCode::ShapeMismatch, "mixture needs one weight per part");
  Rational total = 0;
  for (const auto &w : weights) {
    if (w < 0)
      throw Error(ErrorCode::OutOfRange, "mixture weights must be nonnegative");
    total += w;
  }
  if (total != 1)
    throw Error(ErrorCode::OutOfRange, "mixture weights must sum to 1");
  const std::size_t n = parts.front().n();
  Matrix<Rational> m(n, Rational(0));
  for (std::size_t p = 0; p < parts.size(); ++p) {
    if (parts[p].n() != n)
      throw Error(ErrorCode::ShapeMismatch, "mixture parts differ in step count");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += weights[p] * parts[p](i, j);
  }
  return StepGraphon(std::move(m));
}

StepGraphon pointwise_dense(std::size_t n, const Rational &d, const Rational &noise,
                            std::uint64_t seed) {
  if (d < 0 || d > 1 || noise < 0 || noise > 1)
    throw Error(ErrorCode::OutOfRange, "pointwise_dense needs d, noise in [0,1]");
  Rng rng(seed);
  Matrix<Rational> m(n);
  const Rational slack = (1 - d) * noise;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational v = d + slack * Rational(rng.uniform_int(0, 16), 16);
      v.canonicalize();
      m(i, j) = m(j, i) = v;
    }
  return StepGraphon(std::move(m));
}

StepGraphon random_regular_graphon(std::size_t n, std::uint64_t seed) {
  if (n == 0)
    throw Error(ErrorCode::OutOfRange, "graphon needs at least one step");
  Rng rng(seed);
  constexpr long kDen = 12;
  Matrix<Rational> m(n, Rational(0));
  long used = 0;
  const int permutations = static_cast<int>(rng.uniform_int(1, 3));
  for (int p = 0; p < permutations; ++p) {
    const long weight = rng.uniform_int(1, 3);
    used += weight;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    const Rational half(weight, 2 * kDen);
    for (std::size_t i = 0; i < n; ++i) {
      m(i, perm[i]) += half;
      m(perm[i], i) += half;
    }
  }
  // Optional random regular graph component.
  if (n >= 3 && rng.coin()) {
    std::vector<int> degrees;
    for (int deg = 1; deg < static_cast<int>(n); ++deg)
      if ((static_cast<long>(n) * deg) % 2 == 0)
        degrees.push_back(deg);
    const int deg = degrees[static_cast<std::size_t>(rng.uniform_int(0, long(degrees.size()) - 1))];
    const long weight = rng.uniform_int(1, 2);
    used += weight;
    const Graph g = random_regular_graph(static_cast<int>(n), deg, rng.next());
    const Rational w(weight, kDen);
    for (auto [u, v] : g.edges()) {
      m(u, v) += w;
      m(v, u) += w;
    }
  }
  const long constant = rng.uniform_int(0, kDen - used);
  const Rational c(constant, kDen);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) += c;
      m(i, j).canonicalize();
    }
  return StepGraphon(std::move(m));
}

StepGraphon random_graphon(std::size_t n, std::uint64_t seed, int denominator) {
  if (denominator < 1)
    throw Error(ErrorCode::OutOfRange, "denominator must be positive");
  Rng rng(seed);
  Matrix<Rational> m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Rational v(rng.uniform_int(0, denominator), denominator);
      v.canonicalize();
      m(i, j) = m(j, i) = v;
    }
  return StepGraphon(std::move(m));
}

GeneratorKind parse_generator_kind(const std::string &name) {
  if (name == "constant")
    return GeneratorKind::Constant;
  if (name == "circulant")
    return GeneratorKind::Circulant;
  if (name == "regular_graph")
    return GeneratorKind::RegularGraph;
  if (name == "mixture")
    return GeneratorKind::Mixture;
  if (name == "pointwise_dense")
    return GeneratorKind::PointwiseDense;
  if (name == "random_regular")
    return GeneratorKind::RandomRegular;
  if (name == "random")
    return GeneratorKind::Random;
  throw Error(ErrorCode::Parse, "unknown generator kind '" + name + "'");
}

StepGraphon generate(const GeneratorSpec &spec) {
  switch (spec.kind) {
  case GeneratorKind::Constant:
    return constant_graphon(spec.n, spec.d);
  case GeneratorKind::Circulant:
    return circulant_graphon(spec.profile);
  case GeneratorKind::RegularGraph:
    return regular_graph_graphon(static_cast<int>(spec.n), spec.degree, spec.seed);
  case GeneratorKind::Mixture: {
    std::vector<StepGraphon> parts;
    for (const auto &p : spec.parts)
      parts.push_back(generate(p));
    return mixture(spec.weights, parts);
  }
  case GeneratorKind::PointwiseDense:
    return pointwise_dense(spec.n, spec.d, spec.noise, spec.seed);
  case GeneratorKind::RandomRegular:
    return random_regular_graphon(spec.n, spec.seed);
  case GeneratorKind::Random:
    return random_graphon(spec.n, spec.seed);
  }
  throw Error(ErrorCode::Parse, "unknown generator kind");
}

} // namespace sidlab
