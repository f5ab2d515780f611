#include "sidlab/contraction.hpp"

#include <set>

namespace sidlab {

EliminationOrder min_fill_order(const Graph &interactions, const std::vector<char> &eliminable) {
  const int n = interactions.n_vertices();
  std::vector<std::set<Vertex>> adj(n);
  for (auto [u, v] : interactions.edges()) {
    adj[u].insert(v);
    adj[v].insert(u);
  }
  std::vector<char> remaining(eliminable.begin(), eliminable.end());
  remaining.resize(n, 0);
  EliminationOrder out;
  while (true) {
    Vertex best = -1;
    long best_fill = 0;
    std::size_t best_degree = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (!remaining[v])
        continue;
      long fill = 0;
      for (auto a = adj[v].begin(); a != adj[v].end(); ++a)
        for (auto b = std::next(a); b != adj[v].end(); ++b)
          if (!adj[*a].count(*b))
            ++fill;
      if (best == -1 || fill < best_fill ||
          (fill == best_fill && adj[v].size() < best_degree)) {
        best = v;
        best_fill = fill;
        best_degree = adj[v].size();
      }
    }
    if (best == -1)
      break;
    out.order.push_back(best);
    out.arity.push_back(static_cast<int>(adj[best].size()) + 1);
    for (auto a = adj[best].begin(); a != adj[best].end(); ++a) {
      for (auto b = std::next(a); b != adj[best].end(); ++b) {
        adj[*a].insert(*b);
        adj[*b].insert(*a);
      }
      adj[*a].erase(best);
    }
    adj[best].clear();
    remaining[best] = 0;
  }
  return out;
}

} // namespace sidlab
