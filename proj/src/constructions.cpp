#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "sidlab/error.hpp"
#include "sidlab/graphs.hpp"

namespace sidlab {

namespace {

// Appends a path from `from` to `to` with `length` edges, allocating
// length - 1 fresh internal vertices starting at next_vertex.
void append_path(std::vector<Edge> &edges, int &next_vertex, Vertex from, Vertex to, int length) {
  Vertex prev = from;
  for (int i = 1; i < length; ++i) {
    Vertex fresh = next_vertex++;
    edges.emplace_back(prev, fresh);
    prev = fresh;
  }
  edges.emplace_back(prev, to);
}

// Same as append_path but reports the allocated internal vertices.
std::vector<Vertex> append_path_collect(std::vector<Edge> &edges, int &next_vertex, Vertex from,
                                        Vertex to, int length) {
  const int first = next_vertex;
  append_path(edges, next_vertex, from, to, length);
  std::vector<Vertex> internal(next_vertex - first);
  std::iota(internal.begin(), internal.end(), first);
  return internal;
}

} // namespace

Graph path_graph(int length) {
  if (length < 0)
    throw Error(ErrorCode::InvalidGraph, "path length must be >= 0");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i)
    edges.emplace_back(i, i + 1);
  return Graph(length + 1, std::move(edges));
}

Graph cycle_graph(int length) {
  if (length < 3)
    throw Error(ErrorCode::InvalidGraph, "cycle length must be >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < length; ++i)
    edges.emplace_back(i, (i + 1) % length);
  return Graph(length, std::move(edges));
}

Graph complete_graph(int h) {
  if (h < 1)
    throw Error(ErrorCode::InvalidGraph, "complete graph needs h >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < h; ++i)
    for (int j = i + 1; j < h; ++j)
      edges.emplace_back(i, j);
  return Graph(h, std::move(edges));
}

Graph complete_multipartite(const std::vector<int> &part_sizes) {
  std::vector<int> part;
  for (std::size_t p = 0; p < part_sizes.size(); ++p) {
    if (part_sizes[p] < 1)
      throw Error(ErrorCode::InvalidGraph, "part sizes must be >= 1");
    part.insert(part.end(), part_sizes[p], static_cast<int>(p));
  }
  std::vector<Edge> edges;
  const int n = static_cast<int>(part.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (part[i] != part[j])
        edges.emplace_back(i, j);
  return Graph(n, std::move(edges));
}

Graph star_of_paths(const std::vector<int> &arm_lengths) {
  std::vector<Edge> edges;
  int next = 1;
  for (int len : arm_lengths) {
    if (len < 1)
      throw Error(ErrorCode::InvalidGraph, "arm length must be >= 1");
    Vertex prev = 0;
    for (int i = 0; i < len; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph(next, std::move(edges));
}

RootedGraph generalized_theta(const std::vector<int> &lengths, Parity parity) {
  if (lengths.empty())
    throw Error(ErrorCode::InvalidGraph, "theta graph needs at least one path");
  int ones = 0;
  for (int len : lengths) {
    if (len < 1)
      throw Error(ErrorCode::InvalidGraph, "path lengths must be >= 1");
    if (parity == Parity::Even && len % 2 != 0)
      throw Error(ErrorCode::Parity, "even theta graph got odd length " + std::to_string(len));
    if (parity == Parity::Odd && len % 2 == 0)
      throw Error(ErrorCode::Parity, "odd theta graph got even length " + std::to_string(len));
    ones += len == 1;
  }
  if (ones > 1)
    throw Error(ErrorCode::MultiEdge, "at most one path may have length 1");
  std::vector<Edge> edges;
  int next = 2;
  for (int len : lengths)
    append_path(edges, next, 0, 1, len);
  return RootedGraph(Graph(next, std::move(edges)), 0, 1);
}

Graph flower(const std::vector<int> &cycle_lengths) {
  if (cycle_lengths.empty())
    throw Error(ErrorCode::InvalidGraph, "flower needs at least one cycle");
  std::vector<Edge> edges;
  int next = 1;
  for (int len : cycle_lengths) {
    if (len < 3)
      throw Error(ErrorCode::InvalidGraph, "flower cycles need length >= 3");
    append_path(edges, next, 0, 0, len);
  }
  return Graph(next, std::move(edges));
}

Graph subdivide(const Graph &h, int times) {
  if (times < 0)
    throw Error(ErrorCode::InvalidGraph, "subdivision count must be >= 0");
  std::map<Edge, int> per_edge;
  for (Edge e : h.edges())
    per_edge[e] = times;
  return subdivide(h, per_edge);
}

Graph subdivide(const Graph &h, const std::map<Edge, int> &times) {
  if (times.size() != h.n_edges())
    throw Error(ErrorCode::SpecMismatch, "subdivision map must cover exactly the host edges");
  std::vector<Edge> edges;
  int next = h.n_vertices();
  for (Edge e : h.edges()) {
    auto it = times.find(e);
    if (it == times.end())
      throw Error(ErrorCode::SpecMismatch, "subdivision map is missing a host edge");
    if (it->second < 0)
      throw Error(ErrorCode::InvalidGraph, "subdivision count must be >= 0");
    append_path(edges, next, e.first, e.second, it->second + 1);
  }
  return Graph(next, std::move(edges));
}

Graph replace_edges(const Graph &h, const RootedGraph &gadget) {
  const Graph &f = gadget.graph();
  std::vector<Vertex> internal;
  for (Vertex v = 0; v < f.n_vertices(); ++v)
    if (v != gadget.root1() && v != gadget.root2())
      internal.push_back(v);

  std::vector<Edge> edges;
  int next = h.n_vertices();
  std::vector<Vertex> image(f.n_vertices());
  for (auto [u, v] : h.edges()) {
    image[gadget.root1()] = u;
    image[gadget.root2()] = v;
    for (Vertex x : internal)
      image[x] = next++;
    for (auto [a, b] : f.edges())
      edges.emplace_back(image[a], image[b]);
  }
  return Graph(next, std::move(edges));
}

Graph replace_edges_nonuniform(const Graph &h, const ReplacementSpec &spec) {
  spec.check_matches(h);
  std::map<Edge, const ReplacementSpec::Multiset *> by_edge;
  for (std::size_t i = 0; i < spec.host_edges().size(); ++i)
    by_edge[spec.host_edges()[i]] = &spec.lengths()[i];
  std::vector<Edge> edges;
  int next = h.n_vertices();
  for (Edge e : h.edges())
    for (auto [k, count] : *by_edge.at(e))
      for (int c = 0; c < count; ++c)
        append_path(edges, next, e.first, e.second, k);
  return Graph(next, std::move(edges));
}

Graph semidirect_product(const Graph &h1, const std::vector<Vertex> &independent, Vertex a,
                         const Graph &h2, int subdivision_k) {
  const int n1 = h1.n_vertices();
  if (subdivision_k < 1)
    throw Error(ErrorCode::InvalidGraph, "subdivision parameter k must be >= 1");
  if (a < 0 || a >= n1)
    throw Error(ErrorCode::InvalidGraph, "vertex a out of range");
  std::set<Vertex> in_i;
  for (Vertex v : independent) {
    if (v < 0 || v >= n1)
      throw Error(ErrorCode::InvalidGraph, "independent-set vertex out of range");
    if (!in_i.insert(v).second)
      throw Error(ErrorCode::InvalidGraph, "independent set lists a vertex twice");
  }
  if (in_i.count(a))
    throw Error(ErrorCode::RootInIndependentSet, "vertex a must not lie in I");
  if (!is_independent_set(h1, independent))
    throw Error(ErrorCode::NotIndependent, "I is not an independent set of H1");

  // Shared I vertices first, then each copy's remaining vertices.
  std::vector<Vertex> shared_index(n1, -1);
  int next = 0;
  for (Vertex v : in_i)
    shared_index[v] = next++;
  const int copies = h2.n_vertices();
  std::vector<std::vector<Vertex>> copy_index(copies, std::vector<Vertex>(n1, -1));
  for (int c = 0; c < copies; ++c)
    for (Vertex v = 0; v < n1; ++v)
      copy_index[c][v] = in_i.count(v) ? shared_index[v] : next++;

  std::vector<Edge> edges;
  for (int c = 0; c < copies; ++c)
    for (auto [u, v] : h1.edges())
      edges.emplace_back(copy_index[c][u], copy_index[c][v]);
  for (auto [x, y] : h2.edges())
    append_path(edges, next, copy_index[x][a], copy_index[y][a], 2 * subdivision_k);
  return Graph(next, std::move(edges));
}

Graph disjoint_union(const Graph &g1, const Graph &g2) {
  std::vector<Edge> edges = g1.edges();
  const int shift = g1.n_vertices();
  for (auto [u, v] : g2.edges())
    edges.emplace_back(u + shift, v + shift);
  return Graph(g1.n_vertices() + g2.n_vertices(), std::move(edges));
}

Graph clique_split_subdivision(int h, int l1, int l2) {
  if (h < 2 || l1 < 1 || l2 < 1)
    throw Error(ErrorCode::InvalidGraph, "clique split subdivision needs h >= 2, l1, l2 >= 1");
  // Path 0 - ... - l2: I = {0}, a = l2.
  return semidirect_product(path_graph(l2), {0}, l2, complete_graph(h - 1), l1);
}

const char *to_string(ReplacementCase c) {
  switch (c) {
  case ReplacementCase::Divisible:
    return "CaseDivisible";
  case ReplacementCase::SingleLength:
    return "CaseSingleLength";
  case ReplacementCase::NotCovered:
    return "NotCovered";
  }
  return "unknown";
}

ClassifyResult classify_replacement(const Graph &h, const ReplacementSpec &spec) {
  spec.check_matches(h);
  ClassifyResult out;
  const int hv = h.n_vertices();
  if (hv < 2) {
    out.reason = "host needs at least two vertices";
    return out;
  }
  const long pairs = static_cast<long>(hv) * (hv - 1) / 2;
  const auto totals = spec.totals();
  for (auto [k, total] : totals)
    if (k % 2 != 0) {
      out.offending_length = k;
      out.reason = "odd path length " + std::to_string(k);
      return out;
    }

  std::optional<int> not_divisible;
  for (auto [k, total] : totals)
    if (total % pairs != 0) {
      not_divisible = k;
      break;
    }
  if (!not_divisible) {
    out.result = ReplacementCase::Divisible;
    return out;
  }
  if (totals.size() == 1 && totals.begin()->second >= pairs) {
    out.result = ReplacementCase::SingleLength;
    return out;
  }
  out.offending_length = not_divisible;
  if (totals.size() == 1)
    out.reason = "single length class with total below C(h,2)";
  else
    out.reason = "sum of length-" + std::to_string(*not_divisible) +
                 " paths not divisible by C(h,2) = " + std::to_string(pairs);
  return out;
}

OddThetaDecomposition odd_theta_decomposition(std::vector<int> lengths) {
  if (lengths.size() < 2)
    throw Error(ErrorCode::InvalidGraph, "odd theta decomposition needs at least two paths");
  for (int len : lengths) {
    if (len < 1)
      throw Error(ErrorCode::InvalidGraph, "path lengths must be >= 1");
    if (len % 2 == 0)
      throw Error(ErrorCode::Parity, "odd theta graph got even length " + std::to_string(len));
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  if (std::count(lengths.begin(), lengths.end(), 1) > 1)
    throw Error(ErrorCode::MultiEdge, "at most one path may have length 1");

  const std::size_t k = lengths.size();
  const int shortest = lengths.back();
  const Vertex s = 0;
  const Vertex t = 1;
  int next = 2;
  std::vector<Edge> edges;

  // T0: a path s..t of the shortest length plus an arm from s for every
  // longer path, ending at x_i (x_i = s for arms of length zero).
  std::vector<Vertex> t0{s, t};
  auto spine = append_path_collect(edges, next, s, t, shortest);
  t0.insert(t0.end(), spine.begin(), spine.end());
  std::vector<Vertex> x(k - 1, s);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const int arm = (lengths[i] - shortest) / 2;
    Vertex prev = s;
    for (int step = 0; step < arm; ++step) {
      Vertex fresh = next++;
      edges.emplace_back(prev, fresh);
      t0.push_back(fresh);
      prev = fresh;
    }
    x[i] = prev;
  }

  TreeDecomposition td;
  std::sort(t0.begin(), t0.end());
  td.bags.push_back(t0);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const int len = (lengths[i] + shortest) / 2;
    auto internal = append_path_collect(edges, next, t, x[i], len);
    std::vector<Vertex> bag{t, x[i]};
    bag.insert(bag.end(), internal.begin(), internal.end());
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(bag);
    td.tree_edges.emplace_back(0, static_cast<int>(i + 1));
  }
  return {Graph(next, std::move(edges)), s, t, std::move(td)};
}

} // namespace sidlab
