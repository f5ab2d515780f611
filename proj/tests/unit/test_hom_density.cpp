#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sidlab/error.hpp"
#include "sidlab/generators.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/rng.hpp"

using namespace sidlab;
using oracle::rmat;

namespace {

StepGraphon bip2() { return StepGraphon(rmat({{"0", "1"}, {"1", "0"}})); }

Graph random_graph(Rng &rng, int max_v) {
  const int v = static_cast<int>(rng.uniform_int(1, max_v));
  std::vector<Edge> edges;
  for (int a = 0; a < v; ++a)
    for (int b = a + 1; b < v; ++b)
      if (rng.coin())
        edges.emplace_back(a, b);
  return Graph(v, edges);
}

DensityValue exact(const Graph &h, const StepGraphon &w, Strategy s = Strategy::Eliminate,
                   PinMap pins = {}) {
  DensityOptions o;
  o.strategy = s;
  o.pins = std::move(pins);
  return hom_density(h, w, o);
}

double as_float(const Graph &h, const StepGraphon &w) {
  DensityOptions o;
  o.mode = EvalMode::Float;
  return hom_density(h, w, o).approx;
}

} // namespace

TEST_SUITE("homdensity") {

TEST_CASE("density examples") {
  const auto k3 = exact(complete_graph(3), constant_graphon(4, Rational(1, 2)));
  CHECK(k3.exact == Rational(1, 8));
  CHECK(k3.vH == 3);
  CHECK(exact(cycle_graph(4), bip2()).exact == Rational(1, 8));
  CHECK(exact(complete_graph(2), bip2(), Strategy::Eliminate, {{0, 0}, {1, 1}}).exact == 1);
  CHECK(exact(complete_graph(2), bip2(), Strategy::Eliminate, {{0, 0}, {1, 0}}).exact == 0);
  CHECK(as_float(cycle_graph(4), bip2()) == doctest::Approx(0.125));
}

TEST_CASE("edge cases: empty graphs, isolated vertices, one step") {
  const StepGraphon w(oracle::random_rational_matrix(3, 1));
  CHECK(exact(Graph(0, {}), w).exact == 1);
  CHECK(exact(Graph(4, {}), w).exact == 1);
  CHECK(exact(Graph(3, {{0, 1}}), w).exact == edge_density(w));
  const StepGraphon one = constant_graphon(1, Rational(2, 7));
  CHECK(exact(cycle_graph(5), one).exact == pow(Rational(2, 7), 5));
}

TEST_CASE("pins normalize over unpinned vertices only") {
  const auto a = oracle::random_rational_matrix(3, 21);
  const StepGraphon w(a);
  const Graph p2 = path_graph(2);
  const auto w2 = oracle::kernel_power(a, 2);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) {
      const auto v = exact(p2, w, Strategy::Eliminate, {{0, x}, {2, y}});
      CHECK(v.exact == w2(x, y));
      CHECK(v.vH == 1);
      CHECK(exact(p2, w, Strategy::BruteForce, {{0, x}, {2, y}}).exact == w2(x, y));
    }
  CHECK_THROWS_AS(exact(p2, w, Strategy::Eliminate, {{5, 0}}), Error);
  CHECK_THROWS_AS(exact(p2, w, Strategy::Eliminate, {{0, 3}}), Error);
}

TEST_CASE("elimination equals brute force and the enumeration oracle") {
  Rng rng(1234);
  for (int t = 0; t < 200; ++t) {
    const Graph h = random_graph(rng, 6);
    const StepGraphon w = random_graphon(static_cast<std::size_t>(rng.uniform_int(1, 4)), rng.next());
    const auto elim = exact(h, w, Strategy::Eliminate).exact;
    CHECK(elim == exact(h, w, Strategy::BruteForce).exact);
    CHECK(elim == oracle::density(h, w.values()));
    CHECK(elim >= 0);
    CHECK(elim <= 1);
  }
}

TEST_CASE("exact denominators divide n^v times input denominators") {
  Rng rng(8);
  for (int t = 0; t < 40; ++t) {
    const Graph h = random_graph(rng, 5);
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    const StepGraphon w = random_graphon(n, rng.next(), 6);
    const Rational v = exact(h, w).exact;
    mpz_class bound = 1;
    for (int i = 0; i < h.n_vertices(); ++i)
      bound *= static_cast<long>(n);
    for (std::size_t e = 0; e < h.n_edges(); ++e)
      bound *= 6;
    CHECK(mpz_class(bound % v.get_den()) == 0);
  }
}

TEST_CASE("brute force refuses oversized enumerations") {
  const StepGraphon w = constant_graphon(10, Rational(1, 2));
  CHECK_THROWS_AS(exact(Graph(8, {}), w, Strategy::BruteForce), Error);
}

TEST_CASE("float mode agrees with exact mode") {
  Rng rng(2);
  for (int t = 0; t < 50; ++t) {
    const Graph h = random_graph(rng, 6);
    const StepGraphon w = random_graphon(static_cast<std::size_t>(rng.uniform_int(1, 5)), rng.next());
    CHECK(as_float(h, w) == doctest::Approx(exact(h, w).exact.get_d()).epsilon(1e-13));
  }
}

TEST_CASE("tree exactness on regular graphons") {
  Rng rng(4);
  for (int t = 0; t < 60; ++t) {
    const int v = static_cast<int>(rng.uniform_int(1, 9));
    std::vector<Edge> edges;
    for (int x = 1; x < v; ++x)
      edges.emplace_back(static_cast<int>(rng.uniform_int(0, x - 1)), x);
    const Graph tree(v, edges);
    const StepGraphon w = random_regular_graphon(static_cast<std::size_t>(rng.uniform_int(1, 5)), rng.next());
    const Rational d = edge_density(w);
    CHECK(exact(tree, w).exact == pow(d, static_cast<unsigned>(v - 1)));
    const auto def = deficit(tree, w, Baseline::sidorenko(), EvalMode::Exact);
    REQUIRE(def.exact.has_value());
    CHECK(*def.exact == 0);
  }
}

TEST_CASE("multiplicativity over disjoint unions") {
  Rng rng(6);
  for (int t = 0; t < 40; ++t) {
    const Graph g1 = random_graph(rng, 4), g2 = random_graph(rng, 4);
    const StepGraphon w = random_graphon(static_cast<std::size_t>(rng.uniform_int(1, 4)), rng.next());
    CHECK(exact(disjoint_union(g1, g2), w).exact == exact(g1, w).exact * exact(g2, w).exact);
  }
}

TEST_CASE("monotone under entrywise increase") {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    const Graph h = random_graph(rng, 5);
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    Matrix<Rational> a = random_graphon(n, rng.next()).values();
    const Rational before = exact(h, StepGraphon(a)).exact;
    const std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    const std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(n) - 1));
    a(i, j) = a(j, i) = (a(i, j) + 1) / 2;
    const Rational after = exact(h, StepGraphon(a)).exact;
    CHECK(after >= before);
    CHECK(after <= 1);
  }
}

TEST_CASE("counting kernel identity on fixed hosts and gadgets") {
  const std::vector<Graph> hosts = {complete_graph(2), path_graph(2), complete_graph(3),
                                    cycle_graph(4), complete_graph(4)};
  const std::vector<std::vector<int>> gadgets = {{2}, {4}, {2, 2}, {2, 4}};
  std::uint64_t seed = 0;
  for (const auto &h : hosts)
    for (const auto &lengths : gadgets) {
      const auto f = generalized_theta(lengths);
      const StepGraphon w = random_graphon(1 + seed % 4, seed);
      ++seed;
      CHECK(exact(replace_edges(h, f), w).exact == exact(h, counting_kernel(w, f)).exact);
    }
  const StepGraphon c5 = graph_graphon(cycle_graph(5));
  const auto f = generalized_theta({2, 2});
  CHECK(exact(replace_edges(complete_graph(3), f), c5).exact ==
        exact(complete_graph(3), counting_kernel(c5, f)).exact);
}

TEST_CASE("elimination order is a min-fill permutation with reported width") {
  const auto order = elimination_order(cycle_graph(8));
  std::vector<Vertex> sorted = order.order;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7});
  CHECK(order.max_arity() == 3);
  CHECK(order.induced_width() == 2);
  CHECK(elimination_order(path_graph(6)).max_arity() == 2);
  CHECK(elimination_order(complete_graph(5)).max_arity() == 5);

  const auto pinned = elimination_order(cycle_graph(6), {{0, 0}, {3, 0}});
  CHECK(pinned.order.size() == 4);

  // Theta replacements of small hosts keep a small width.
  const Graph big = replace_edges(complete_graph(4), generalized_theta({4, 4, 2}));
  CHECK(elimination_order(big).induced_width() <= 3);
}

TEST_CASE("arity cap raises an error") {
  EngineLimits tight;
  tight.max_width = 2;
  DensityOptions o;
  o.limits = tight;
  CHECK_THROWS_AS(hom_density(complete_graph(5), constant_graphon(2, Rational(1, 2)), o), Error);
  try {
    hom_density(complete_graph(5), constant_graphon(2, Rational(1, 2)), o);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ArityOverflow);
  }
}

TEST_CASE("gradient examples") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto g = density_gradient(complete_graph(2), constant_graphon(n, Rational(1, 3)).values());
    const Rational nn = Rational(static_cast<long>(n * n));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        CHECK(g(u, v) == (u == v ? 1 / nn : 2 / nn));
  }
}

TEST_CASE("gradient matches central finite differences") {
  auto check = [](const Graph &h, const Matrix<double> &a) {
    const auto grad = density_gradient(h, a);
    const double step = 1e-5;
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i; j < a.size(); ++j) {
        Matrix<double> up = a, down = a;
        up(i, j) += step;
        up(j, i) = up(i, j);
        down(i, j) -= step;
        down(j, i) = down(i, j);
        const double fd = (oracle::density(h, up) - oracle::density(h, down)) / (2 * step);
        CHECK(std::abs(grad(i, j) - fd) <= 1e-6 * std::max(std::abs(fd), 1e-12));
      }
  };
  check(cycle_graph(4), Matrix<double>(2, 0.5));
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    Graph h = random_graph(rng, 5);
    if (h.n_edges() == 0)
      h = complete_graph(2);
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 4));
    Matrix<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        a(i, j) = a(j, i) = 0.1 + 0.8 * rng.uniform01();
    check(h, a);
  }
}

TEST_CASE("exact gradient agrees with the float gradient") {
  const auto a = oracle::random_rational_matrix(3, 30);
  const Graph h = cycle_graph(5);
  const auto ge = density_gradient(h, a);
  const auto gf = density_gradient(h, a.map([](const Rational &x) { return x.get_d(); }));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(gf(i, j) == doctest::Approx(ge(i, j).get_d()).epsilon(1e-13));
}

TEST_CASE("deficit examples") {
  const auto c4 = deficit(cycle_graph(4), bip2(), Baseline::sidorenko(), EvalMode::Exact);
  REQUIRE(c4.exact.has_value());
  CHECK(*c4.exact == Rational(1, 16));
  CHECK(c4.value == doctest::Approx(0.0625));
  CHECK(sidorenko_deficit(cycle_graph(4), bip2().float_values()) == doctest::Approx(0.0625));

  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto w = pointwise_dense(4, Rational(3, 10), Rational(1), s);
    CHECK(deficit(complete_graph(3), w, Baseline::knrs(Rational(3, 10))).value >= 0.0);
  }
  const auto k3 = deficit(complete_graph(3), constant_graphon(2, Rational(1, 2)),
                          Baseline::knrs(Rational(1, 2)), EvalMode::Exact);
  CHECK(*k3.exact == 0);
}

TEST_CASE("Holder bound examples") {
  const Graph k3 = complete_graph(3);
  const ReplacementSpec c6spec(k3.edges(), {{{2, 1}}, {{2, 1}}, {{2, 1}}});
  const auto w = constant_graphon(3, Rational(2, 5));
  const auto b = holder_lower_bound(k3, c6spec, w);
  CHECK(b.mode == EvalMode::Exact);
  CHECK(b.exact == pow(Rational(2, 5), 6));
  CHECK(b.exact == exact(cycle_graph(6), w).exact);

  for (int h = 2; h <= 4; ++h) {
    const Graph kh = complete_graph(h);
    std::vector<ReplacementSpec::Multiset> lengths(kh.n_edges(), {{2, 1}, {4, 1}});
    const ReplacementSpec spec(kh.edges(), lengths);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const StepGraphon rw = random_regular_graphon(1 + s % 3, s);
      const auto bound = holder_lower_bound(kh, spec, rw);
      REQUIRE(bound.mode == EvalMode::Exact);
      CHECK(bound.exact == exact(replace_edges_nonuniform(kh, spec), rw).exact);
    }
  }
}

TEST_CASE("Holder bound on the path host with alpha_2 = 1") {
  const Graph p = path_graph(2);
  const ReplacementSpec spec(p.edges(), {{{2, 1}}, {{2, 2}}});
  const Graph replaced = replace_edges_nonuniform(p, spec);
  for (std::uint64_t s = 0; s < 50; ++s) {
    const StepGraphon w = random_regular_graphon(1 + s % 5, s);
    const auto bound = holder_lower_bound(p, spec, w);
    REQUIRE(bound.mode == EvalMode::Exact);
    CHECK(bound.exact == exact(complete_graph(3), kernel_power(w, 2)).exact);
    CHECK(exact(replaced, w).exact >= bound.exact);
  }
}

TEST_CASE("Holder bound matches an enumeration oracle") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const Graph k3 = complete_graph(3);
    std::vector<ReplacementSpec::Multiset> lengths;
    for (int e = 0; e < 3; ++e)
      lengths.push_back({{static_cast<int>(2 * rng.uniform_int(1, 2)), static_cast<int>(rng.uniform_int(1, 2))}});
    const ReplacementSpec spec(k3.edges(), lengths);
    const auto a = oracle::random_rational_matrix(static_cast<std::size_t>(rng.uniform_int(1, 3)), rng.next());
    std::vector<std::pair<int, double>> alpha;
    for (auto [k, al] : spec.alpha(3))
      alpha.emplace_back(k, al.get_d());
    const double expect = oracle::holder_bound(3, alpha, a);
    const auto bound = holder_lower_bound(k3, spec, StepGraphon(a));
    CHECK(bound.as_double() == doctest::Approx(expect).epsilon(1e-12));
    if (bound.mode == EvalMode::Float)
      CHECK(bound.approx <= as_float(replace_edges_nonuniform(k3, spec), StepGraphon(a)) * (1 + 1e-12));
  }
}

} // TEST_SUITE
