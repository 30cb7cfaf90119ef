#pragma once

#include <utility>
#include <vector>

#include "dg/core.hpp"

namespace dg {

/// Unweighted simple graph; what the combinatorial rigidity machinery works
/// on once edge weights stop mattering.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based endpoints

  static Graph from_instance(const DgpInstance& instance);
  static Graph complete(int n);

  std::vector<std::vector<int>> adjacency() const;
  int m() const { return static_cast<int>(edges.size()); }
};

bool is_connected(const Graph& g);

/// Connected, n >= 2, and free of cut vertices (a single edge counts).
bool is_biconnected(const Graph& g);

/// Vertex connectivity >= k, via max-flow with unit vertex capacities over
/// non-adjacent pairs.
bool vertex_connectivity_at_least(const Graph& g, int k);

}  // namespace dg
