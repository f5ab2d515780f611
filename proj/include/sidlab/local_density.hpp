#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sidlab/step_graphon.hpp"

namespace sidlab {

enum class SearchMethod { Corners, Grid, Descent };

const char *to_string(SearchMethod m);

// Budget for minimizing q(s) = (1/n^2) s^T A s - d (sum(s)/n)^2 over s in [0,1]^n.
struct LocalDensityConfig {
  int corner_max_n = 20;     // exhaustive 0/1 corners when n <= this
  int grid_max_n = 3;        // full grid when n <= this
  int grid_denominator = 16; // grid step 1/16
  int descent_starts = 1000;
  double descent_step = 0.1;
  int descent_iters = 500;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

struct LocalDensityReport {
  Rational target_d;
  double deficit = 0.0;        // q(witness), from the exact recomputation
  std::vector<double> witness; // fractional step occupancy
  SearchMethod method = SearchMethod::Corners;
  bool certified_violation = false; // exact q(witness) < 0

  // Negative findings are certificates; nonnegative ones are only evidence.
  std::string status() const {
    return certified_violation ? "violation-certified" : "no-violation-found (evidence, not proof)";
  }
};

double quadratic_deficit(const Matrix<double> &a, double d, std::span<const double> s);
Rational quadratic_deficit_exact(const Matrix<Rational> &a, const Rational &d,
                                 std::span<const double> s);

LocalDensityReport local_density_deficit(const StepGraphon &w, const Rational &d,
                                         const LocalDensityConfig &config = {});

struct ReiherCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

// lhs = (1/n^2) sum f_i f_j A_ij against rhs = d (sum f / n)^2.
ReiherCheck weighted_reiher_check(const StepGraphon &w, const Rational &d,
                                  std::span<const double> f, double tol = 1e-12);

} // namespace sidlab
