#include <doctest.h>

#include "sidlab/error.hpp"
#include "sidlab/verify.hpp"

using namespace sidlab;

TEST_SUITE("verify") {

TEST_CASE("every suite passes a short run") {
  SuiteOptions opts;
  opts.local.descent_starts = 100;
  for (const auto &name : suite_names()) {
    const auto r = run_suite(name, 18, 5, opts);
    CAPTURE(name);
    CHECK(r.passed());
    CHECK(r.trials == 18);
    CHECK(r.suite == name);
    CHECK(r.max_gap == (r.min_gap == 0.0 ? 0.0 : -r.min_gap));
  }
  CHECK(run_suite("lemma31", 3, 1).suite == "counting_identity");
  CHECK_THROWS_AS(run_suite("nope", 3, 1), Error);
}

TEST_CASE("reports are reproducible and independent of the thread count") {
  SuiteOptions one, many;
  many.jobs = 4;
  one.local.descent_starts = many.local.descent_starts = 50;
  for (const auto &name : suite_names()) {
    const auto a = to_json(run_suite(name, 12, 99, one)).dump();
    const auto b = to_json(run_suite(name, 12, 99, one)).dump();
    const auto c = to_json(run_suite(name, 12, 99, many)).dump();
    CAPTURE(name);
    CHECK(a == b);
    CHECK(a == c);
  }
}

TEST_CASE("failures are minimized to the smallest n, then smallest v(H)") {
  // Fails whenever n >= 3; v(H) is drawn at random, so the minimizer has
  // to search for a failing instance with few vertices.
  auto trial = [](std::size_t, std::uint64_t seed, std::size_t max_n) {
    Rng rng(seed);
    TrialOutcome o;
    o.n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_n)));
    o.vH = static_cast<int>(rng.uniform_int(1, 9));
    o.lhs = 0;
    o.rhs = static_cast<double>(o.n);
    o.gap = -o.rhs;
    o.failed = o.n >= 3;
    return o;
  };
  const auto r = run_trials("synthetic", 40, 1, 6, trial);
  REQUIRE_FALSE(r.passed());
  for (const auto &f : r.failures) {
    CHECK(f.outcome.n >= 3);
    CHECK(f.minimized_max_n == 3);
    CHECK(f.minimized.n == 3);
    // The recorded seed reproduces the failure.
    const auto again = trial(f.trial, f.seed, r.max_n);
    CHECK(again.failed);
    CHECK(again.vH == f.outcome.vH);
    const auto small = trial(f.trial, f.minimized_seed, f.minimized_max_n);
    CHECK(small.failed);
    CHECK(small.vH == f.minimized.vH);
  }
  CHECK(r.min_gap == -6.0);
}

TEST_CASE("throwing trials are recorded as failures") {
  auto trial = [](std::size_t i, std::uint64_t, std::size_t) -> TrialOutcome {
    if (i == 2)
      throw Error(ErrorCode::OutOfRange, "boom");
    return {};
  };
  const auto r = run_trials("throws", 4, 0, 1, trial);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].trial == 2);
  CHECK(r.failures[0].outcome.inputs["error"] == "boom");
}

TEST_CASE("mixed replacement instances are always classifier-covered") {
  Rng rng(2024);
  int rejected = 0;
  for (int t = 0; t < 300; ++t) {
    const auto inst = sample_family_instance(Family::MixedReplacement, rng);
    REQUIRE(inst.host.has_value());
    REQUIRE(inst.spec.has_value());
    CHECK(classify_replacement(*inst.host, *inst.spec).result != ReplacementCase::NotCovered);
    CHECK(inst.graph == replace_edges_nonuniform(*inst.host, *inst.spec));
    rejected += inst.rejected;
  }
  CHECK(rejected > 0); // the sampler does meet uncovered specs
}

TEST_CASE("all family instances are bipartite") {
  Rng rng(7);
  for (const auto fam : all_families())
    for (int t = 0; t < 40; ++t) {
      const auto inst = sample_family_instance(fam, rng);
      CAPTURE(to_string(fam));
      CHECK(is_bipartite(inst.graph));
      if (fam == Family::C6)
        CHECK(inst.graph == cycle_graph(6));
      if (fam == Family::Tree)
        CHECK(static_cast<int>(inst.graph.n_edges()) == inst.graph.n_vertices() - 1);
    }
}

TEST_CASE("report JSON round trip and CSV summary") {
  auto failing = [](std::size_t i, std::uint64_t, std::size_t) {
    TrialOutcome o;
    o.failed = i == 1;
    o.gap = o.failed ? -0.5 : 0.25;
    o.n = 1;
    return o;
  };
  auto b = run_trials("bbb", 3, 4, 1, failing);
  auto a = run_trials("aaa", 2, 4, 1, [](std::size_t, std::uint64_t, std::size_t) {
    return TrialOutcome{};
  });
  const auto j = to_json(b, true);
  CHECK(j.contains("runtime_ms"));
  CHECK_FALSE(to_json(b).contains("runtime_ms"));
  const auto back = suite_report_from_json(j);
  CHECK(back.suite == "bbb");
  CHECK(back.failures.size() == 1);
  CHECK(back.max_gap == 0.5);
  CHECK(to_json(back).dump() == to_json(b).dump());

  a.runtime_ms = 1.5;
  b.runtime_ms = 2.0;
  CHECK(suite_summary_csv({}) == "suite,trials,failures,max_gap,runtime_ms\n");
  CHECK(suite_summary_csv({b, a}) ==
        "suite,trials,failures,max_gap,runtime_ms\n"
        "aaa,2,0,0,1.500\n"
        "bbb,3,1,0.5,2.000\n");
  CHECK_THROWS_AS(suite_report_from_json(nlohmann::json{{"trials", 1}}), Error);
}

} // TEST_SUITE
