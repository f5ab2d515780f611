#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sidlab/graphs.hpp"
#include "sidlab/step_graphon.hpp"

namespace sidlab {

struct ProjectionOptions {
  double tolerance = 1e-10; // max |row sum - n d| at exit
  int max_iterations = 200000;
};

// max |row_i sum - n d| (the box and symmetry hold by construction).
double regular_residual(const Matrix<double> &a, double d);

/// Nearest symmetric grid with entries in [0,1] and every row degree equal
/// to d, by Dykstra's alternating projection between the affine row-sum
/// slice and the box. Throws ProjectionNonconvergence with the residual.
Matrix<double> project_regular(const Matrix<double> &a, double d,
                               const ProjectionOptions &options = {});
StepGraphon project_regular(const Matrix<double> &a, const Rational &d,
                            const ProjectionOptions &options = {});

// Exact affine correction: symmetric X - (a 1^T + 1 a^T) with all row
// sums equal to n d. May leave the box.
Matrix<Rational> affine_regular_correction(const Matrix<Rational> &x, const Rational &d);

struct SearchOptions {
  int starts = 32;
  int iters = 500;
  double initial_step = 0.05;
  double armijo_factor = 0.5;
  double sufficient_decrease = 1e-4;
  double claim_threshold = -1e-8;
  std::uint64_t max_denominator = 1'000'000;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  ProjectionOptions projection;
};

struct ViolationCertificate {
  StepGraphon witness; // rationalized, exactly d-regular
  Rational density;    // t_H(witness)
  Rational baseline;   // t_K2(witness)^e(H)
  Rational deficit;    // density - baseline, negative
};

struct SearchResult {
  StepGraphon best_w;
  double best_deficit = 0.0;
  std::vector<double> trace; // accepted-step deficits of the winning start
  int starts = 0;
  int best_start = 0;
  std::uint64_t seed = 0;
  std::optional<ViolationCertificate> certificate; // set only when exact recheck confirms
};

// Rationalizes w entrywise, re-imposes the row-sum constraint exactly and
// re-evaluates the Sidorenko deficit; returns a certificate only when the
// exact deficit is negative and the witness is a valid graphon.
std::optional<ViolationCertificate> certify_violation(const Graph &h, const Matrix<double> &w,
                                                      const Rational &d,
                                                      std::uint64_t max_denominator = 1'000'000);

SearchResult search_counterexample(const Graph &h, std::size_t n, const Rational &d,
                                   const SearchOptions &options = {});

} // namespace sidlab
