#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sidlab/rational.hpp"

namespace sidlab {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // normalized: first < second

/// Finite simple graph on vertices 0..n-1. Edges are kept sorted and
/// normalized so equal graphs compare equal.
class Graph {
public:
  Graph() = default;
  Graph(int n_vertices, std::vector<Edge> edges);

  int n_vertices() const noexcept { return n_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge> &edges() const noexcept { return edges_; }

  bool has_edge(Vertex u, Vertex v) const;
  std::vector<std::vector<Vertex>> adjacency() const;
  std::vector<int> degrees() const;

  bool operator==(const Graph &) const = default;

private:
  int n_ = 0;
  std::vector<Edge> edges_;
};

Edge normalize_edge(Vertex u, Vertex v);

/// Graph with an ordered pair of distinct roots that some automorphism
/// swaps. The constructor searches for that automorphism and throws
/// MissingSwapAutomorphism when none exists.
class RootedGraph {
public:
  RootedGraph(Graph graph, Vertex r1, Vertex r2);

  const Graph &graph() const noexcept { return graph_; }
  Vertex root1() const noexcept { return r1_; }
  Vertex root2() const noexcept { return r2_; }
  // Vertex permutation swapping the roots.
  const std::vector<Vertex> &swap_automorphism() const noexcept {
    return swap_;
  }

private:
  Graph graph_;
  Vertex r1_;
  Vertex r2_;
  std::vector<Vertex> swap_;
};

/// Path-length multiset for each host edge: lengths[e] maps k -> number of
/// length-k paths replacing host edge e.
class ReplacementSpec {
public:
  using Multiset = std::map<int, int>;

  ReplacementSpec(std::vector<Edge> host_edges, std::vector<Multiset> lengths);

  const std::vector<Edge> &host_edges() const noexcept { return edges_; }
  const std::vector<Multiset> &lengths() const noexcept { return lengths_; }

  // alpha_k = sum_e h_e(k) / C(h, 2) for an h-vertex host.
  std::map<int, Rational> alpha(int h) const;
  // Sum over edges of h_e(k).
  std::map<int, long> totals() const;
  long total_edges() const; // sum_e sum_k k h_e(k)

  // Throws SpecMismatch unless the host edge set equals E(H).
  void check_matches(const Graph &host) const;

private:
  std::vector<Edge> edges_;
  std::vector<Multiset> lengths_;
};

struct TreeDecomposition {
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;
};

struct DecompositionCheck {
  bool is_tree = false;
  bool covers_vertices = false;
  bool covers_edges = false;
  bool connected_occurrences = false;

  bool valid() const {
    return is_tree && covers_vertices && covers_edges && connected_occurrences;
  }
};

DecompositionCheck check_tree_decomposition(const Graph &g,
                                            const TreeDecomposition &td);

// --- structural queries ---------------------------------------------------

bool is_bipartite(const Graph &g);
bool is_independent_set(const Graph &g, const std::vector<Vertex> &set);

// Automorphism (as a permutation) with perm[r1] == r2 and perm[r2] == r1.
std::optional<std::vector<Vertex>> find_root_swap(const Graph &g, Vertex r1,
                                                  Vertex r2);

bool are_isomorphic(const Graph &a, const Graph &b);

// Lexicographically maximal upper-triangle adjacency string over all vertex
// orders, with graph size prefix. Intended for small graphs (v <= 12).
std::string canonical_form(const Graph &g);

// --- constructors -----------------------------------------------------------

enum class Parity { Even, Odd, Any };

Graph path_graph(int length);
Graph cycle_graph(int length);
Graph complete_graph(int h);
Graph complete_multipartite(const std::vector<int> &part_sizes);
Graph star_of_paths(const std::vector<int> &arm_lengths);

RootedGraph generalized_theta(const std::vector<int> &lengths,
                              Parity parity = Parity::Any);

Graph flower(const std::vector<int> &cycle_lengths);

Graph subdivide(const Graph &h, int times);
Graph subdivide(const Graph &h, const std::map<Edge, int> &times);

Graph replace_edges(const Graph &h, const RootedGraph &gadget);
Graph replace_edges_nonuniform(const Graph &h, const ReplacementSpec &spec);

Graph semidirect_product(const Graph &h1, const std::vector<Vertex> &independent,
                         Vertex a, const Graph &h2, int subdivision_k);

Graph disjoint_union(const Graph &g1, const Graph &g2);

// Host used for the clique subdivision family: K_h with edges at a fixed
// vertex subdivided l2-1 times and the rest 2*l1-1 times, built as a
// semidirect product of a path with K_{h-1}.
Graph clique_split_subdivision(int h, int l1, int l2);

enum class ReplacementCase { Divisible, SingleLength, NotCovered };

struct ClassifyResult {
  ReplacementCase result = ReplacementCase::NotCovered;
  // Path length 2k (or the odd length) that blocks coverage, when any.
  std::optional<int> offending_length;
  std::string reason;
};

const char *to_string(ReplacementCase c);

ClassifyResult classify_replacement(const Graph &h, const ReplacementSpec &spec);

struct OddThetaDecomposition {
  Graph graph;
  Vertex root_s;
  Vertex root_t;
  TreeDecomposition decomposition;
};

OddThetaDecomposition odd_theta_decomposition(std::vector<int> lengths);

} // namespace sidlab
