#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dg/core.hpp"

namespace dg {

enum class OrderKind { DMDGP, DDGP, NotDiscretizable };

/// How the natural vertex order 0..n-1 discretizes the instance. Vertices are
/// 0-based here; the DMDGP/DDGP conditions apply to every vertex i >= K.
struct DiscretizationOrder {
  OrderKind kind = OrderKind::NotDiscretizable;
  /// reference_predecessors[i] lists the predecessors whose distances place
  /// vertex i: all of them for i <= K, exactly K of them past that (the K
  /// immediate ones for a DMDGP, the K largest-index adjacent ones for a
  /// DDGP).
  std::vector<std::vector<int>> reference_predecessors;
  std::vector<Edge> discretization_edges;
  std::vector<Edge> pruning_edges;
};

/// Group of partial reflections mapping solutions onto each other,
/// generated by one reflection per branching level that no pruning edge
/// reaches across.
struct PruningGroup {
  std::vector<int> generator_levels;  // 0-based vertex levels, sorted
  std::uint64_t order = 1;            // 2^#generators
};

struct BpOptions {
  double tol = kDefaultTol;
  std::uint64_t max_solutions = 0;  // 0 = unlimited
  bool fix_reflection = true;
  std::uint64_t seed = 0;  // reserved for exploration-order experiments
  int jobs = 1;
};

/// All incongruent realizations found plus search-tree statistics.
struct SolutionSet {
  std::vector<Realization> solutions;
  std::vector<std::int64_t> level_counts;  // nodes alive per level, size n
  std::int64_t pruned_count = 0;
  bool reflection_fixed = true;
  bool stopped_early = false;
};

/// Classifies the instance under its natural vertex order. Interval edges
/// never serve as discretization edges. NotDiscretizable is a valid outcome,
/// not an error.
DiscretizationOrder classify_order(const DgpInstance& instance);

/// Intersection of K spheres in R^K; returns 0, 1 or 2 points, each
/// satisfying every sphere within tol. Throws DegenerateCenters.
std::vector<std::vector<double>> sphere_intersect(const std::vector<std::vector<double>>& centers,
                                                  const std::vector<double>& radii,
                                                  double tol = kDefaultTol);

/// Branch-and-Prune over the discretization order: the first K+1 vertices are
/// placed canonically (translations and rotations fixed; the first reflection
/// too when fix_reflection is on), every later vertex at the <= 2 sphere
/// intersection points of its reference predecessors, pruned by the remaining
/// edges. Throws NotDiscretizable or InfeasibleInitialClique.
SolutionSet bp_solve(const DgpInstance& instance, const BpOptions& options = {});

/// Generator levels i >= K such that no pruning edge {u,v} has u+K < i <= v
/// (0-based); group order 2^#generators. DMDGP only.
PruningGroup pruning_group(const DiscretizationOrder& order, int n, int K);

/// Fixes positions 0..level-1 and reflects positions level..n-1 through the
/// hyperplane spanned by x[level-K..level-1]. An involution.
Realization partial_reflection(const Realization& x, int level, int K);

/// Orbit of x under the pruning group, filtered to members that validate
/// against every edge within tol and deduplicated by congruence. Reflected
/// copies count as congruent when fix_reflection is on, mirroring bp_solve.
SolutionSet orbit_generate(const Realization& x, const PruningGroup& group,
                           const DgpInstance& instance, double tol = kDefaultTol,
                           bool fix_reflection = true);

/// 2^(#generators - fix_reflection), the generic solution count when every
/// pruning edge cuts one subtree side. Unavailable (nullopt) with interval
/// pruning edges. DMDGP only.
std::optional<std::uint64_t> predicted_solution_count(const DiscretizationOrder& order, int n,
                                                      int K, bool fix_reflection = true);

}  // namespace dg
