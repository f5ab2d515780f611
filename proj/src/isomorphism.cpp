#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "sidlab/error.hpp"
#include "sidlab/graphs.hpp"

namespace sidlab {

namespace {

using AdjMatrix = std::vector<std::vector<char>>;

AdjMatrix adjacency_matrix(const Graph &g) {
  AdjMatrix m(g.n_vertices(), std::vector<char>(g.n_vertices(), 0));
  for (auto [u, v] : g.edges())
    m[u][v] = m[v][u] = 1;
  return m;
}

std::vector<int> bfs_distances(const Graph &g, Vertex source) {
  const auto adj = g.adjacency();
  std::vector<int> dist(g.n_vertices(), std::numeric_limits<int>::max());
  dist[source] = 0;
  std::queue<Vertex> q;
  q.push(source);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    for (Vertex w : adj[u])
      if (dist[w] == std::numeric_limits<int>::max()) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
  }
  return dist;
}

// Per-vertex label that every isomorphism must preserve: degree followed by
// the sorted degrees of the neighbours, plus any caller-supplied extras.
std::vector<std::vector<int>> vertex_labels(const Graph &g) {
  const auto adj = g.adjacency();
  const auto deg = g.degrees();
  std::vector<std::vector<int>> labels(g.n_vertices());
  for (Vertex v = 0; v < g.n_vertices(); ++v) {
    auto &l = labels[v];
    l.push_back(deg[v]);
    std::vector<int> nd;
    for (Vertex w : adj[v])
      nd.push_back(deg[w]);
    std::sort(nd.begin(), nd.end());
    l.insert(l.end(), nd.begin(), nd.end());
  }
  return labels;
}

// Backtracking search for an isomorphism a -> b extending `fixed`, where
// only vertices with equal labels may be matched.
class Matcher {
public:
  Matcher(const Graph &a, const Graph &b, std::vector<std::vector<int>> la,
          std::vector<std::vector<int>> lb)
      : ga_(a), ma_(adjacency_matrix(a)), mb_(adjacency_matrix(b)), la_(std::move(la)),
        lb_(std::move(lb)) {}

  std::optional<std::vector<Vertex>> run(const std::vector<std::pair<Vertex, Vertex>> &fixed) {
    const int n = ga_.n_vertices();
    map_.assign(n, -1);
    used_.assign(n, 0);
    for (auto [u, w] : fixed) {
      if (la_[u] != lb_[w] || used_[w] || map_[u] != -1)
        return std::nullopt;
      if (!consistent(u, w))
        return std::nullopt;
      map_[u] = w;
      used_[w] = 1;
    }
    build_order();
    if (extend(0))
      return map_;
    return std::nullopt;
  }

private:
  void build_order() {
    const int n = ga_.n_vertices();
    const auto adj = ga_.adjacency();
    std::vector<char> placed(n, 0);
    std::vector<int> weight(n, 0);
    for (Vertex v = 0; v < n; ++v)
      if (map_[v] != -1) {
        placed[v] = 1;
        for (Vertex w : adj[v])
          ++weight[w];
      }
    // Greedy: next vertex has most already-ordered neighbours, then degree.
    for (int step = 0; step < n; ++step) {
      Vertex best = -1;
      for (Vertex v = 0; v < n; ++v) {
        if (placed[v])
          continue;
        if (best == -1 || weight[v] > weight[best] ||
            (weight[v] == weight[best] && adj[v].size() > adj[best].size()))
          best = v;
      }
      if (best == -1)
        break;
      placed[best] = 1;
      order_.push_back(best);
      for (Vertex w : adj[best])
        ++weight[w];
    }
  }

  bool consistent(Vertex u, Vertex w) const {
    for (Vertex x = 0; x < static_cast<Vertex>(map_.size()); ++x)
      if (map_[x] != -1 && ma_[u][x] != mb_[w][map_[x]])
        return false;
    return true;
  }

  bool extend(std::size_t depth) {
    if (depth == order_.size())
      return true;
    const Vertex u = order_[depth];
    for (Vertex w = 0; w < static_cast<Vertex>(used_.size()); ++w) {
      if (used_[w] || la_[u] != lb_[w] || !consistent(u, w))
        continue;
      map_[u] = w;
      used_[w] = 1;
      if (extend(depth + 1))
        return true;
      map_[u] = -1;
      used_[w] = 0;
    }
    return false;
  }

  const Graph &ga_;
  AdjMatrix ma_;
  AdjMatrix mb_;
  std::vector<std::vector<int>> la_;
  std::vector<std::vector<int>> lb_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
  std::vector<Vertex> order_;
};

} // namespace

std::optional<std::vector<Vertex>> find_root_swap(const Graph &g, Vertex r1, Vertex r2) {
  const int n = g.n_vertices();
  if (r1 < 0 || r2 < 0 || r1 >= n || r2 >= n || r1 == r2)
    return std::nullopt;
  const auto deg = g.degrees();
  if (deg[r1] != deg[r2])
    return std::nullopt;
  // Labels on the source side use (dist to r1, dist to r2); the image of v
  // must see the roots the other way round.
  const auto d1 = bfs_distances(g, r1);
  const auto d2 = bfs_distances(g, r2);
  auto base = vertex_labels(g);
  auto la = base, lb = base;
  for (Vertex v = 0; v < n; ++v) {
    la[v].insert(la[v].begin(), {d1[v], d2[v]});
    lb[v].insert(lb[v].begin(), {d2[v], d1[v]});
  }
  Matcher m(g, g, std::move(la), std::move(lb));
  return m.run({{r1, r2}, {r2, r1}});
}

bool are_isomorphic(const Graph &a, const Graph &b) {
  if (a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges())
    return false;
  auto la = vertex_labels(a);
  auto lb = vertex_labels(b);
  auto sa = la, sb = lb;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb)
    return false;
  Matcher m(a, b, std::move(la), std::move(lb));
  return m.run({}).has_value();
}

namespace {

class CanonicalSearch {
public:
  explicit CanonicalSearch(const Graph &g)
      : n_(g.n_vertices()), adj_(adjacency_matrix(g)), deg_(g.degrees()) {}

  std::string run() {
    order_.clear();
    used_.assign(n_, 0);
    best_.clear();
    current_.clear();
    extend();
    return std::to_string(n_) + ":" + best_;
  }

private:
  // Twins (same neighbourhood apart from each other) are interchangeable
  // by an automorphism, so only the first unused one of a class is tried.
  bool twin_of_tried(Vertex w, const std::vector<Vertex> &tried) const {
    for (Vertex t : tried) {
      bool same = true;
      for (Vertex x = 0; x < n_ && same; ++x)
        if (x != w && x != t && adj_[w][x] != adj_[t][x])
          same = false;
      if (same)
        return true;
    }
    return false;
  }

  void extend() {
    const std::size_t depth = order_.size();
    if (depth == static_cast<std::size_t>(n_)) {
      if (current_ > best_)
        best_ = current_;
      return;
    }
    // Positions are filled in non-increasing degree order.
    int want = -1;
    for (Vertex w = 0; w < n_; ++w)
      if (!used_[w])
        want = std::max(want, deg_[w]);
    std::vector<Vertex> tried;
    for (Vertex w = 0; w < n_; ++w) {
      if (used_[w] || deg_[w] != want || twin_of_tried(w, tried))
        continue;
      tried.push_back(w);
      const std::size_t mark = current_.size();
      for (Vertex prev : order_)
        current_.push_back(adj_[prev][w] ? '1' : '0');
      // Compare against the incumbent on the common prefix.
      if (!best_.empty() && current_.compare(0, current_.size(), best_, 0, current_.size()) < 0) {
        current_.resize(mark);
        continue;
      }
      order_.push_back(w);
      used_[w] = 1;
      extend();
      used_[w] = 0;
      order_.pop_back();
      current_.resize(mark);
    }
  }

  int n_;
  AdjMatrix adj_;
  std::vector<int> deg_;
  std::vector<Vertex> order_;
  std::vector<char> used_;
  std::string best_;
  std::string current_;
};

} // namespace

std::string canonical_form(const Graph &g) {
  if (g.n_vertices() > 16)
    throw Error(ErrorCode::OutOfRange, "canonical_form is limited to 16 vertices");
  return CanonicalSearch(g).run();
}

} // namespace sidlab
