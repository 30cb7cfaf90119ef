#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace dg {

enum class PatchKind { Triangular, ErdosRenyi };

/// Finite graph whose edges get diluted: a triangular tessellation patch with
/// open boundary, or the complete graph for G(n,p) experiments.
struct LatticePatch {
  PatchKind kind = PatchKind::Triangular;
  int rows = 0, cols = 0;  // triangular only
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  static LatticePatch triangular(int rows, int cols);
  static LatticePatch gnp(int n);
};

struct PercolationSnapshot {
  int edge_count = 0;
  double eta = 0.0;
  int largest_rigid_component = 1;
  bool spanning_rigid = false;
};

struct PercolationTrajectory {
  std::vector<PercolationSnapshot> snapshots;  // one per edge insertion
  bool final_spanning = false;
  double eta_at_rigidity = 0.0;  // eta when first spanning; NaN when never
};

enum class PercolationProcess {
  BondDilution,    // retain each patch edge independently with probability p
  ResamplingLoop,  // repeatedly sample u,v and add the patch edge with probability p
};

struct PercolationOptions {
  PercolationProcess process = PercolationProcess::BondDilution;
  std::uint64_t max_steps = 0;  // loop-variant budget; 0 picks 20 * |patch edges|
};

/// Plays the edge process and the incremental (2,3) pebble game, recording a
/// snapshot after every insertion (plus the empty start). Rigid clusters are
/// tracked as the edge partition into maximal rigid bodies.
PercolationTrajectory run_percolation(const LatticePatch& patch, double p, std::uint64_t seed,
                                      const PercolationOptions& options = {});

struct SweepRow {
  double p = 0.0;
  double fraction_spanning_rigid = 0.0;
  double mean_eta_at_rigidity = 0.0;  // NaN when no trial got rigid
};

/// Monte-Carlo sweep over p values; per-trial seeds derive from (seed,
/// p-index, trial-index) so results do not depend on scheduling. On
/// triangular patches the per-trial rigidity event is a rigid cluster
/// touching all four patch borders (whole-patch rigidity is dominated by the
/// open boundary); on complete-graph patches it is all vertices in one body.
std::vector<SweepRow> sweep(const LatticePatch& patch, const std::vector<double>& p_values,
                            int trials_per_p, std::uint64_t seed, int jobs = 1,
                            const PercolationOptions& options = {});

}  // namespace dg
