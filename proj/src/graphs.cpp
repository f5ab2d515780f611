#include "sidlab/graphs.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "sidlab/error.hpp"

namespace sidlab {

Edge normalize_edge(Vertex u, Vertex v) {
  return u < v ? Edge{u, v} : Edge{v, u};
}

Graph::Graph(int n_vertices, std::vector<Edge> edges) : n_(n_vertices) {
  if (n_vertices < 0)
    throw Error(ErrorCode::InvalidGraph, "negative vertex count");
  edges_.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw Error(ErrorCode::InvalidGraph,
                  "edge endpoint out of range: " + std::to_string(u) + "-" + std::to_string(v));
    if (u == v)
      throw Error(ErrorCode::InvalidGraph, "loop at vertex " + std::to_string(u));
    edges_.push_back(normalize_edge(u, v));
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end())
    throw Error(ErrorCode::MultiEdge, "duplicate edge " + std::to_string(dup->first) + "-" +
                                          std::to_string(dup->second));
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u == v)
    return false;
  return std::binary_search(edges_.begin(), edges_.end(), normalize_edge(u, v));
}

std::vector<std::vector<Vertex>> Graph::adjacency() const {
  std::vector<std::vector<Vertex>> adj(n_);
  for (auto [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto &row : adj)
    std::sort(row.begin(), row.end());
  return adj;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_, 0);
  for (auto [u, v] : edges_) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

RootedGraph::RootedGraph(Graph graph, Vertex r1, Vertex r2)
    : graph_(std::move(graph)), r1_(r1), r2_(r2) {
  const int n = graph_.n_vertices();
  if (r1 < 0 || r2 < 0 || r1 >= n || r2 >= n)
    throw Error(ErrorCode::InvalidGraph, "root out of range");
  if (r1 == r2)
    throw Error(ErrorCode::InvalidGraph, "roots must be distinct");
  auto perm = find_root_swap(graph_, r1, r2);
  if (!perm)
    throw Error(ErrorCode::MissingSwapAutomorphism,
                "no automorphism swaps roots " + std::to_string(r1) + " and " + std::to_string(r2));
  swap_ = std::move(*perm);
}

ReplacementSpec::ReplacementSpec(std::vector<Edge> host_edges, std::vector<Multiset> lengths)
    : lengths_(std::move(lengths)) {
  if (host_edges.size() != lengths_.size())
    throw Error(ErrorCode::SpecMismatch, "edge list and length list differ in size");
  edges_.reserve(host_edges.size());
  for (auto [u, v] : host_edges) {
    if (u == v || u < 0 || v < 0)
      throw Error(ErrorCode::InvalidGraph, "bad host edge in replacement spec");
    edges_.push_back(normalize_edge(u, v));
  }
  std::set<Edge> seen(edges_.begin(), edges_.end());
  if (seen.size() != edges_.size())
    throw Error(ErrorCode::SpecMismatch, "duplicate host edge in replacement spec");
  for (auto &ms : lengths_) {
    for (auto it = ms.begin(); it != ms.end();) {
      if (it->first < 1)
        throw Error(ErrorCode::InvalidGraph, "path length must be >= 1");
      if (it->second < 0)
        throw Error(ErrorCode::InvalidGraph, "path multiplicity must be >= 0");
      it = it->second == 0 ? ms.erase(it) : std::next(it);
    }
    if (ms.empty())
      throw Error(ErrorCode::InvalidGraph, "every host edge needs at least one path");
    auto one = ms.find(1);
    if (one != ms.end() && one->second > 1)
      throw Error(ErrorCode::MultiEdge, "more than one length-1 path on a host edge");
  }
}

std::map<int, long> ReplacementSpec::totals() const {
  std::map<int, long> out;
  for (const auto &ms : lengths_)
    for (auto [k, c] : ms)
      out[k] += c;
  return out;
}

std::map<int, Rational> ReplacementSpec::alpha(int h) const {
  if (h < 2)
    throw Error(ErrorCode::InvalidGraph, "alpha needs a host with at least two vertices");
  const long pairs = static_cast<long>(h) * (h - 1) / 2;
  std::map<int, Rational> out;
  for (auto [k, total] : totals()) {
    Rational a(total, pairs);
    a.canonicalize();
    out[k] = a;
  }
  return out;
}

long ReplacementSpec::total_edges() const {
  long out = 0;
  for (auto [k, total] : totals())
    out += k * total;
  return out;
}

void ReplacementSpec::check_matches(const Graph &host) const {
  std::vector<Edge> mine = edges_;
  std::sort(mine.begin(), mine.end());
  if (mine != host.edges())
    throw Error(ErrorCode::SpecMismatch, "replacement spec edges do not match host edges");
}

DecompositionCheck check_tree_decomposition(const Graph &g, const TreeDecomposition &td) {
  DecompositionCheck out;
  const int nb = static_cast<int>(td.bags.size());
  const int n = g.n_vertices();

  // Tree: nb - 1 edges, valid indices, connected.
  if (nb >= 1 && static_cast<int>(td.tree_edges.size()) == nb - 1) {
    std::vector<int> parent(nb);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x)
        x = parent[x] = parent[parent[x]];
      return x;
    };
    bool ok = true;
    for (auto [a, b] : td.tree_edges) {
      if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) {
        ok = false;
        break;
      }
      int ra = find(a), rb = find(b);
      if (ra == rb) {
        ok = false;
        break;
      }
      parent[ra] = rb;
    }
    out.is_tree = ok;
  }

  std::vector<std::set<Vertex>> bag_sets;
  bag_sets.reserve(nb);
  bool in_range = true;
  for (const auto &bag : td.bags) {
    for (Vertex v : bag)
      if (v < 0 || v >= n)
        in_range = false;
    bag_sets.emplace_back(bag.begin(), bag.end());
  }

  std::vector<std::vector<int>> occurrences(n);
  for (int b = 0; b < nb; ++b)
    for (Vertex v : bag_sets[b])
      if (v >= 0 && v < n)
        occurrences[v].push_back(b);

  out.covers_vertices =
      in_range && std::all_of(occurrences.begin(), occurrences.end(),
                              [](const auto &occ) { return !occ.empty(); });

  out.covers_edges = in_range && std::all_of(g.edges().begin(), g.edges().end(), [&](Edge e) {
                       return std::any_of(bag_sets.begin(), bag_sets.end(), [&](const auto &s) {
                         return s.count(e.first) && s.count(e.second);
                       });
                     });

  if (!out.is_tree || !in_range)
    return out;

  std::vector<std::vector<int>> tree_adj(nb);
  for (auto [a, b] : td.tree_edges) {
    tree_adj[a].push_back(b);
    tree_adj[b].push_back(a);
  }
  out.connected_occurrences = true;
  for (Vertex v = 0; v < n && out.connected_occurrences; ++v) {
    const auto &occ = occurrences[v];
    if (occ.empty())
      continue;
    std::set<int> members(occ.begin(), occ.end());
    std::set<int> reached{occ.front()};
    std::queue<int> frontier;
    frontier.push(occ.front());
    while (!frontier.empty()) {
      int b = frontier.front();
      frontier.pop();
      for (int c : tree_adj[b])
        if (members.count(c) && reached.insert(c).second)
          frontier.push(c);
    }
    out.connected_occurrences = reached.size() == members.size();
  }
  return out;
}

bool is_bipartite(const Graph &g) {
  const auto adj = g.adjacency();
  std::vector<int> side(g.n_vertices(), -1);
  for (Vertex s = 0; s < g.n_vertices(); ++s) {
    if (side[s] != -1)
      continue;
    side[s] = 0;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex u = q.front();
      q.pop();
      for (Vertex w : adj[u]) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          q.push(w);
        } else if (side[w] == side[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

bool is_independent_set(const Graph &g, const std::vector<Vertex> &set) {
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j)
      if (g.has_edge(set[i], set[j]))
        return false;
  return true;
}

} // namespace sidlab
