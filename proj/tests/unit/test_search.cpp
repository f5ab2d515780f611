#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "sidlab/error.hpp"
#include "sidlab/generators.hpp"
#include "sidlab/hom_density.hpp"
#include "sidlab/rng.hpp"
#include "sidlab/search.hpp"

using namespace sidlab;

namespace {

double max_abs_diff(const Matrix<double> &a, const Matrix<double> &b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool in_box(const Matrix<double> &a) {
  for (double x : a.data())
    if (x < 0.0 || x > 1.0)
      return false;
  return true;
}

} // namespace

TEST_SUITE("search") {

TEST_CASE("projection closed-form example") {
  // Minimize |X - [[1,0],[0,0]]| over symmetric X with row sums 1/2 in the
  // box: X = [[1/2 - t, t], [t, 1/2 - t]], distance (1/2 + t)^2 + 2t^2 +
  // (1/2 - t)^2 is smallest at t = 0.
  const auto p = project_regular(oracle::dmat({{1, 0}, {0, 0}}), 0.25);
  CHECK(max_abs_diff(p, oracle::dmat({{0.5, 0}, {0, 0.5}})) <= 1e-9);
  CHECK(regular_residual(p, 0.25) <= 1e-10);
}

TEST_CASE("projection fixed points") {
  const auto c = project_regular(Matrix<double>(4, 0.3), 0.3);
  CHECK(max_abs_diff(c, Matrix<double>(4, 0.3)) <= 1e-12);
  for (int deg = 0; deg < 6; deg += 1) {
    if ((6 * deg) % 2)
      continue;
    const auto g = regular_graph_graphon(6, deg, 3).float_values();
    const auto p = project_regular(g, deg / 6.0);
    CHECK(max_abs_diff(p, g) <= 1e-9);
  }
}

TEST_CASE("projection output satisfies both constraint families") {
  Rng rng(4);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(1, 6));
    Matrix<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = 1.4 * rng.uniform01() - 0.2;
    const double d = rng.uniform01();
    const auto p = project_regular(a, d);
    CHECK(p.is_symmetric());
    CHECK(in_box(p));
    CHECK(regular_residual(p, d) <= 1e-10);
    // idempotence
    CHECK(max_abs_diff(project_regular(p, d), p) <= 1e-9);
  }
}

TEST_CASE("projection output is no farther than a known feasible point") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(rng.uniform_int(2, 5));
    Matrix<double> a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        a(i, j) = a(j, i) = rng.uniform01();
    const double d = 0.5;
    const auto p = project_regular(a, d);
    const Matrix<double> constant(n, d);
    double dp = 0, dc = 0;
    for (std::size_t k = 0; k < a.data().size(); ++k) {
      dp += std::pow(p.data()[k] - a.data()[k], 2);
      dc += std::pow(constant.data()[k] - a.data()[k], 2);
    }
    CHECK(dp <= dc + 1e-9);
  }
}

TEST_CASE("projection rejects out-of-range degrees") {
  CHECK_THROWS_AS(project_regular(Matrix<double>(2, 0.5), 1.5), Error);
}

TEST_CASE("exact affine correction restores row sums") {
  const auto x = oracle::random_rational_matrix(4, 3, 10);
  const auto fixed = affine_regular_correction(x, Rational(2, 5));
  CHECK(fixed.is_symmetric());
  for (std::size_t i = 0; i < 4; ++i) {
    Rational row = 0;
    for (std::size_t j = 0; j < 4; ++j)
      row += fixed(i, j);
    CHECK(row == Rational(8, 5));
  }
}

TEST_CASE("negative controls: C4 and C6") {
  SearchOptions opts;
  opts.starts = 8;
  opts.iters = 100;
  opts.seed = 3;
  for (const Graph &h : {cycle_graph(4), cycle_graph(6)}) {
    const auto r = search_counterexample(h, 4, Rational(1, 2), opts);
    CHECK(r.best_deficit >= 0.0);
    CHECK_FALSE(r.certificate.has_value());
    CHECK(r.starts == 8);
    const double recomputed = deficit(h, r.best_w, Baseline::sidorenko()).value;
    CHECK(std::abs(recomputed - r.best_deficit) <= 1e-10);
    CHECK(regularity(r.best_w, 1e-9).regular());
  }
}

TEST_CASE("trace is non-increasing and the run is deterministic") {
  SearchOptions opts;
  opts.starts = 4;
  opts.iters = 60;
  opts.seed = 11;
  const Graph h = replace_edges_nonuniform(
      complete_graph(3), ReplacementSpec(complete_graph(3).edges(), {{{2, 1}}, {{2, 1}}, {{4, 1}}}));
  const auto a = search_counterexample(h, 4, Rational(1, 2), opts);
  for (std::size_t i = 1; i < a.trace.size(); ++i)
    CHECK(a.trace[i] <= a.trace[i - 1]);
  REQUIRE_FALSE(a.trace.empty());
  CHECK(a.trace.back() == a.best_deficit);
  opts.jobs = 3;
  const auto b = search_counterexample(h, 4, Rational(1, 2), opts);
  CHECK(a.best_deficit == b.best_deficit);
  CHECK(a.best_start == b.best_start);
  CHECK(a.best_w == b.best_w);
  CHECK(a.trace == b.trace);
}

TEST_CASE("non-bipartite targets are rejected") {
  CHECK_THROWS_AS(search_counterexample(complete_graph(3), 3, Rational(1, 2)), Error);
}

TEST_CASE("violation certificate survives exact recheck") {
  // Triangles vanish on the bipartite graphon, so K3 is violated there.
  const auto cert = certify_violation(complete_graph(3), oracle::dmat({{0, 1}, {1, 0}}), Rational(1, 2));
  REQUIRE(cert.has_value());
  CHECK(cert->density == 0);
  CHECK(cert->baseline == Rational(1, 8));
  CHECK(cert->deficit == Rational(-1, 8));
  CHECK(regularity(cert->witness).regular());

  // A slightly perturbed float witness is rationalized back onto the exact
  // regular slice.
  const auto noisy = oracle::dmat({{1e-9, 1 - 1e-9}, {1 - 1e-9, 1e-9}});
  const auto cert2 = certify_violation(complete_graph(3), noisy, Rational(1, 2));
  REQUIRE(cert2.has_value());
  CHECK(*regularity(cert2->witness).degree == Rational(1, 2));

  // No certificate when the inequality holds.
  CHECK_FALSE(certify_violation(cycle_graph(4), oracle::dmat({{0, 1}, {1, 0}}), Rational(1, 2)));
}

} // TEST_SUITE
