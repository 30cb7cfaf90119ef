#include "dg/graph.hpp"

#include <algorithm>
#include <queue>

namespace dg {

Graph Graph::from_instance(const DgpInstance& instance) {
  Graph g;
  g.n = instance.n;
  g.edges.reserve(instance.edges.size());
  for (const Edge& e : instance.edges) g.edges.emplace_back(e.u, e.v);
  return g;
}

Graph Graph::complete(int n) {
  Graph g;
  g.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.edges.emplace_back(u, v);
  return g;
}

std::vector<std::vector<int>> Graph::adjacency() const {
  std::vector<std::vector<int>> adj(n);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  const auto adj = g.adjacency();
  std::vector<char> seen(g.n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == g.n;
}

namespace {

// Cut-vertex detection (Hopcroft-Tarjan lowpoint rule), iterative DFS.
bool has_cut_vertex(const Graph& g) {
  const auto adj = g.adjacency();
  std::vector<int> disc(g.n, -1), low(g.n, 0), parent(g.n, -1), child_count(g.n, 0);
  int timer = 0;
  for (int root = 0; root < g.n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<std::pair<int, size_t>> stack{{root, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [u, it] = stack.back();
      if (it < adj[u].size()) {
        const int v = adj[u][it++];
        if (disc[v] == -1) {
          parent[v] = u;
          ++child_count[u];
          disc[v] = low[v] = timer++;
          stack.emplace_back(v, 0);
        } else if (v != parent[u]) {
          low[u] = std::min(low[u], disc[v]);
        }
      } else {
        stack.pop_back();
        const int p = parent[u];
        if (p != -1) {
          low[p] = std::min(low[p], low[u]);
          if (p != root && low[u] >= disc[p]) return true;
        }
      }
    }
    if (child_count[root] >= 2) return true;
  }
  return false;
}

// Max-flow value from s to t in the vertex-split network, capped at `limit`.
// Vertices other than s,t have capacity one; edges are uncapacitated.
int vertex_disjoint_paths(const Graph& g, int s, int t, int limit) {
  const int n = g.n;
  const int nodes = 2 * n;  // v_in = 2v, v_out = 2v+1
  struct Arc {
    int to;
    int cap;
    int rev;
  };
  std::vector<std::vector<Arc>> net(nodes);
  auto add_arc = [&](int a, int b, int cap) {
    net[a].push_back({b, cap, static_cast<int>(net[b].size())});
    net[b].push_back({a, 0, static_cast<int>(net[a].size()) - 1});
  };
  for (int v = 0; v < n; ++v) add_arc(2 * v, 2 * v + 1, v == s || v == t ? limit : 1);
  for (const auto& [u, v] : g.edges) {
    add_arc(2 * u + 1, 2 * v, limit);
    add_arc(2 * v + 1, 2 * u, limit);
  }
  const int source = 2 * s + 1, sink = 2 * t;
  int flow = 0;
  while (flow < limit) {
    std::vector<std::pair<int, int>> pred(nodes, {-1, -1});  // node, arc index
    std::queue<int> q;
    q.push(source);
    pred[source] = {source, -1};
    while (!q.empty() && pred[sink].first == -1) {
      const int u = q.front();
      q.pop();
      for (size_t i = 0; i < net[u].size(); ++i) {
        const Arc& a = net[u][i];
        if (a.cap > 0 && pred[a.to].first == -1) {
          pred[a.to] = {u, static_cast<int>(i)};
          q.push(a.to);
        }
      }
    }
    if (pred[sink].first == -1) break;
    for (int v = sink; v != source;) {
      auto [u, i] = pred[v];
      net[u][i].cap -= 1;
      net[v][net[u][i].rev].cap += 1;
      v = u;
    }
    ++flow;
  }
  return flow;
}

}  // namespace

bool is_biconnected(const Graph& g) {
  if (g.n < 2) return false;
  if (!is_connected(g)) return false;
  if (g.n == 2) return g.m() >= 1;
  return !has_cut_vertex(g);
}

bool vertex_connectivity_at_least(const Graph& g, int k) {
  if (k <= 0) return true;
  if (g.n <= k) return false;  // kappa(G) <= n-1 < k unless complete; complete K_{k+1}... handled below
  if (!is_connected(g)) return false;
  std::vector<std::vector<char>> adj(g.n, std::vector<char>(g.n, 0));
  for (const auto& [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
  bool any_pair = false;
  for (int s = 0; s < g.n; ++s) {
    for (int t = s + 1; t < g.n; ++t) {
      if (adj[s][t]) continue;
      any_pair = true;
      if (vertex_disjoint_paths(g, s, t, k) < k) return false;
    }
  }
  if (!any_pair) return g.n - 1 >= k;  // complete graph
  return true;
}

}  // namespace dg
