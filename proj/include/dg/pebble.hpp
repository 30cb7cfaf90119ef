#pragma once

#include <vector>

namespace dg {

/// Incremental (2,3) pebble game. Every vertex starts with two pebbles; an
/// edge is inserted as independent when four pebbles can be gathered on its
/// endpoints, consuming one, and is redundant otherwise. The directed graph
/// of independent edges plus the pebble counts represent the 2D generic
/// rigidity matroid of everything inserted so far.
class PebbleGame23 {
 public:
  explicit PebbleGame23(int n);

  /// True when {u,v} enters as independent, false when redundant.
  bool insert_edge(int u, int v);

  /// Adding {u,v} would be redundant, i.e. the distance u-v is already
  /// determined. Rearranges pebbles but never changes the matroid state.
  bool pair_rigid(int u, int v);

  int independent_count() const { return independent_; }
  int free_pebbles() const { return 2 * n_ - independent_; }

  /// The graph inserted so far spans one rigid body covering all vertices.
  bool spanning_rigid() const { return n_ >= 2 && independent_ == 2 * n_ - 3; }

  /// Vertex support of the maximal rigid body containing edge {u,v}.
  std::vector<int> rigid_body_of(int u, int v);

  int size() const { return n_; }

  /// Pebbles currently on v (0..2); pebbles plus out-degree is always 2.
  int pebbles(int v) const { return pebbles_[v]; }
  /// Current orientation of the independent edges out of v.
  const std::vector<int>& out_neighbors(int v) const { return out_[v]; }

 private:
  bool find_pebble(int root, int avoid);
  bool gather(int u, int v, int needed);

  int n_ = 0;
  int independent_ = 0;
  std::vector<int> pebbles_;
  std::vector<std::vector<int>> out_;
  std::vector<int> seen_;
  std::vector<int> parent_;
  int stamp_ = 0;
};

}  // namespace dg
