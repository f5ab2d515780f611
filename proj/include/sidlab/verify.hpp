#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sidlab/graphs.hpp"
#include "sidlab/local_density.hpp"
#include "sidlab/rng.hpp"

namespace sidlab {

/// Result of one randomized trial. gap = lhs - rhs; negative means the
/// checked inequality went the wrong way.
struct TrialOutcome {
  nlohmann::json inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;
  bool failed = false;
  std::string label; // instance family, used for per-family stats
  std::size_t n = 0; // graphon steps
  int vH = 0;
};

struct SuiteFailure {
  std::size_t trial = 0;
  std::uint64_t seed = 0; // per-trial seed; rerun with the same max_n
  TrialOutcome outcome;
  std::uint64_t minimized_seed = 0;
  std::size_t minimized_max_n = 0;
  TrialOutcome minimized;
};

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t max_n = 0;
  std::vector<SuiteFailure> failures;
  double min_gap = 0.0; // most negative lhs - rhs seen
  double max_gap = 0.0; // largest shortfall rhs - lhs seen (= -min_gap)
  double runtime_ms = 0.0;
  nlohmann::json stats = nlohmann::json::object();

  bool passed() const { return failures.empty(); }
};

/// A trial is a pure function of (trial index, per-trial seed, max_n).
using TrialFn = std::function<TrialOutcome(std::size_t index, std::uint64_t seed, std::size_t max_n)>;

/// Runs trials with per-trial seeds derive_seed(seed, index), possibly on
/// several threads; results are merged in trial order. Failures are
/// re-tested at smaller max_n to find a small witness.
SuiteReport run_trials(const std::string &suite, std::size_t trials, std::uint64_t seed,
                       std::size_t max_n, const TrialFn &trial, unsigned jobs = 1);

struct SuiteOptions {
  unsigned jobs = 1;
  std::size_t max_n = 0; // 0 = suite default
  LocalDensityConfig local;
};

SuiteReport verify_counting_identity(std::size_t trials, std::uint64_t seed,
                                     const SuiteOptions &options = {});
SuiteReport verify_oracle_equivalence(std::size_t trials, std::uint64_t seed,
                                      const SuiteOptions &options = {});
SuiteReport verify_local_density(std::size_t trials, std::uint64_t seed,
                                 const SuiteOptions &options = {});
SuiteReport verify_sidorenko_families(std::size_t trials, std::uint64_t seed,
                                      const SuiteOptions &options = {});
SuiteReport verify_flower_knrs(std::size_t trials, std::uint64_t seed,
                               const SuiteOptions &options = {});
SuiteReport verify_holder(std::size_t trials, std::uint64_t seed,
                          const SuiteOptions &options = {});
SuiteReport verify_gradient(std::size_t trials, std::uint64_t seed,
                            const SuiteOptions &options = {});

std::vector<std::string> suite_names();
/// Accepts the names above plus "lemma31" for the counting identity.
/// Throws Error(OutOfRange) on an unknown name.
SuiteReport run_suite(const std::string &name, std::size_t trials, std::uint64_t seed,
                      const SuiteOptions &options = {});

// Instance families of the Sidorenko suite, sampled round-robin.
enum class Family {
  C6,
  ThetaClique,       // K3 / K4 with an even theta on every edge
  ThetaMultipartite, // complete multipartite host, even theta
  MixedReplacement,  // non-uniform even replacement accepted by the classifier
  CliqueSplit,       // path glued to subdivided K_{h-1}
  Semidirect,
  Subdivision,
  OddTheta,
  Tree,
};

const char *to_string(Family f);
std::vector<Family> all_families();

struct FamilyInstance {
  Family family = Family::C6;
  Graph graph;
  nlohmann::json description;
  std::optional<Graph> host;            // MixedReplacement only
  std::optional<ReplacementSpec> spec;  // MixedReplacement only
  int rejected = 0;                     // classifier rejections before acceptance
};

FamilyInstance sample_family_instance(Family family, Rng &rng);

nlohmann::json to_json(const SuiteReport &report, bool include_timing = false);
SuiteReport suite_report_from_json(const nlohmann::json &j);

/// CSV summary: suite,trials,failures,max_gap,runtime_ms. Rows sorted by
/// suite id; header only when reports is empty.
std::string suite_summary_csv(std::vector<SuiteReport> reports);

} // namespace sidlab
