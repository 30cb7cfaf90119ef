#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dg/core.hpp"
#include "dg/graph.hpp"
#include "dg/matrix.hpp"

namespace dg {

enum class RigidityStatus { Rigid, Flexible, DegenerateAffineHull };

/// |E| x Kn matrix whose kernel holds the infinitesimal motions: the row of
/// edge {u,v} carries x_u - x_v in u's K columns and x_v - x_u in v's.
struct RigidityMatrix {
  Matrix m;
  std::vector<std::pair<int, int>> edge_index;  // row -> edge endpoints
};

struct RigidityVerdict {
  RigidityStatus status = RigidityStatus::Flexible;
  int rank = 0;
  int dof = 0;  // Kn - rank
};

enum class PebbleVerdict { MinimallyRigid, RigidWithRedundancy, Flexible };

struct PebbleGameResult {
  PebbleVerdict verdict = PebbleVerdict::Flexible;
  std::vector<std::vector<int>> components;  // maximal rigid clusters
  int independent_edges = 0;
  int redundant_edges = 0;
};

RigidityMatrix rigidity_matrix(const Framework& fw);

/// Rank test of Asimow-Roth: rigid iff rk R = Kn - K(K+1)/2, provided the
/// affine hull of x spans R^K; DegenerateAffineHull otherwise. `tol_factor`
/// feeds the numerical rank.
RigidityVerdict infinitesimal_rigidity(const Framework& fw, double tol_factor = 1e-10);

/// Monte-Carlo genericity: realizes the graph at uniform random coordinates
/// in [0,1)^{Kn} and keeps the best rank over `trials`. Probability-1 correct,
/// not deterministic.
RigidityVerdict generic_rigidity(const Graph& g, int K, int trials = 3,
                                 std::uint64_t seed = 0);

/// K=1 characterization: generically rigid iff connected.
bool rigid_k1(const Graph& g);

/// Laman's two counting conditions checked over all vertex subsets.
/// Guarded to |V| <= 16 (TooLarge beyond).
bool laman_bruteforce(const Graph& g);

/// Generalized Maxwell counts in dimension K: |E| = K|V| - K(K+1)/2 and every
/// induced subgraph on >= K vertices satisfies |E'| <= K|V'| - K(K+1)/2.
/// Necessary for minimal rigidity; sufficient only for K <= 2.
bool maxwell_counts(const Graph& g, int K);

/// (2,3) pebble game with rigid-component decomposition.
PebbleGameResult pebble_game_2_3(const Graph& g);

/// Stays generically rigid after removing any single edge.
bool redundantly_rigid(const Graph& g, int K, int trials = 3, std::uint64_t seed = 0);

/// K=1: biconnectivity. K=2: 3-connected and redundantly rigid. Complete
/// graphs on at most K+1 vertices are globally rigid as well. K >= 3 is
/// UnsupportedDimension.
bool globally_rigid(const Graph& g, int K, int trials = 3, std::uint64_t seed = 0);

}  // namespace dg
