#pragma once

#include <utility>
#include <vector>

#include "dg/core.hpp"

namespace dg {

/// Unassigned input: a multiset of distance values with no incidence
/// information. For the complete-graph case m = n(n-1)/2.
struct DistanceList {
  int K = 0;
  int n = 0;
  std::vector<double> values;

  int m() const { return static_cast<int>(values.size()); }
  /// Throws InvariantError unless all values are positive and m <= n(n-1)/2.
  void check_invariants() const;
};

/// Maps list index i to the unordered vertex pair realizing value i.
struct Assignment {
  std::vector<std::pair<int, int>> pairs;  // size m, 0-based vertices
};

struct TribondResult {
  bool feasible = false;
  Realization realization;  // meaningful when feasible
  int best_depth = 0;       // most points ever placed, for diagnostics
  bool timed_out = false;
};

/// Exact search for a realization of a complete-graph distance list: seed a
/// (K+2)-point clique by incremental triangulation with backtracking, then
/// extend one vertex at a time through sphere intersections, matching every
/// realized distance against the unused multiset. Throws BadCardinality when
/// m != n(n-1)/2. `timeout_seconds` <= 0 disables the time budget.
TribondResult tribond(const DistanceList& list, double tol = 1e-6,
                      double timeout_seconds = 0.0);

/// Sum of squared residuals of x against the list under a fixed assignment.
/// Throws IncompleteAssignment when the assignment misses an index or reuses
/// a pair.
double udgp_cost(const Realization& x, const DistanceList& list, const Assignment& a);

/// Assignment minimizing udgp_cost for fixed x, plus its cost. Sorted
/// matching for complete lists, optimal bipartite matching otherwise.
std::pair<Assignment, double> best_assignment(const Realization& x, const DistanceList& list);

}  // namespace dg
