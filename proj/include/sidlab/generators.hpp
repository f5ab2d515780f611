#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sidlab/graphs.hpp"
#include "sidlab/step_graphon.hpp"

namespace sidlab {

StepGraphon constant_graphon(std::size_t n, const Rational &d);

// values[i][j] = profile[(i - j) mod n]; the profile must satisfy
// profile[k] == profile[n - k].
StepGraphon circulant_graphon(const std::vector<Rational> &profile);

// 0/1 adjacency of a graph as an equal-step graphon.
StepGraphon graph_graphon(const Graph &g);

// Random simple deg-regular graph: pairing model, then random edge switches
// that remove loops and repeated pairs.
Graph random_regular_graph(int n, int deg, std::uint64_t seed);
StepGraphon regular_graph_graphon(int n, int deg, std::uint64_t seed);

// Convex combination; all parts must have the same step count.
StepGraphon mixture(const std::vector<Rational> &weights, const std::vector<StepGraphon> &parts);

// Entries d + (1 - d) * noise * r/16, r uniform in 0..16; pointwise >= d.
StepGraphon pointwise_dense(std::size_t n, const Rational &d, const Rational &noise,
                            std::uint64_t seed);

// Weighted sum of symmetrized permutation matrices, a random regular graph
// and a constant part, total weight <= 1. Regular by construction.
StepGraphon random_regular_graphon(std::size_t n, std::uint64_t seed);

// Independent symmetric entries r/denominator.
StepGraphon random_graphon(std::size_t n, std::uint64_t seed, int denominator = 6);

enum class GeneratorKind {
  Constant,
  Circulant,
  RegularGraph,
  Mixture,
  PointwiseDense,
  RandomRegular,
  Random,
};

GeneratorKind parse_generator_kind(const std::string &name);

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::Constant;
  std::size_t n = 1;
  Rational d = 0;                    // constant / pointwise_dense
  Rational noise = 1;                // pointwise_dense
  int degree = 0;                    // regular_graph
  std::vector<Rational> profile;     // circulant
  std::vector<Rational> weights;     // mixture
  std::vector<GeneratorSpec> parts;  // mixture
  std::uint64_t seed = 0;
};

StepGraphon generate(const GeneratorSpec &spec);

} // namespace sidlab
