#include "dg/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dg/errors.hpp"
#include "dg/parallel.hpp"
#include "dg/pebble.hpp"
#include "dg/rng.hpp"

namespace dg {

LatticePatch LatticePatch::triangular(int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvariantError("patch needs positive extent");
  LatticePatch patch;
  patch.kind = PatchKind::Triangular;
  patch.rows = rows;
  patch.cols = cols;
  patch.n = rows * cols;
  const auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) patch.edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) patch.edges.emplace_back(id(r, c), id(r + 1, c));
      if (r + 1 < rows && c + 1 < cols) patch.edges.emplace_back(id(r, c), id(r + 1, c + 1));
    }
  }
  return patch;
}

LatticePatch LatticePatch::gnp(int n) {
  if (n < 1) throw InvariantError("patch needs positive extent");
  LatticePatch patch;
  patch.kind = PatchKind::ErdosRenyi;
  patch.n = n;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) patch.edges.emplace_back(u, v);
  return patch;
}

namespace {

// The sequence of edge insertions the process performs for one trial.
std::vector<std::pair<int, int>> insertion_sequence(const LatticePatch& patch, double p,
                                                    Rng rng, const PercolationOptions& opt) {
  std::vector<std::pair<int, int>> inserted;
  if (opt.process == PercolationProcess::BondDilution) {
    for (const auto& e : patch.edges)
      if (rng.bernoulli(p)) inserted.push_back(e);
    // random growth order
    for (size_t i = inserted.size(); i > 1; --i)
      std::swap(inserted[i - 1], inserted[rng.below(i)]);
    return inserted;
  }
  std::set<std::pair<int, int>> member(patch.edges.begin(), patch.edges.end());
  std::set<std::pair<int, int>> present;
  const std::uint64_t budget =
      opt.max_steps > 0 ? opt.max_steps : 20 * static_cast<std::uint64_t>(patch.edges.size());
  for (std::uint64_t step = 0; step < budget; ++step) {
    const int u = static_cast<int>(rng.below(patch.n));
    const int v = static_cast<int>(rng.below(patch.n));
    if (u == v) continue;
    const auto key = std::minmax(u, v);
    if (!member.count(key) || present.count(key)) continue;
    if (rng.bernoulli(p)) {
      present.insert(key);
      inserted.push_back(key);
    }
  }
  return inserted;
}

double eta_of(int edge_count, int n) {
  if (n < 2) return 0.0;
  return 2.0 * edge_count / (static_cast<double>(n) * (n - 1));
}

// Incremental rigid-cluster bookkeeping on top of the pebble game. Clusters
// are the maximal rigid bodies (vertex supports of the edge partition); a new
// independent edge creates one body that absorbs every cluster sharing two of
// its vertices.
class ClusterTracker {
 public:
  explicit ClusterTracker(int n) : game_(n), n_(n) {}

  // Returns the vertex support of the newly formed body, or nullptr when the
  // edge was redundant (bodies unchanged).
  const std::vector<int>* insert(int u, int v) {
    const bool independent = game_.insert_edge(u, v);
    if (!independent) return nullptr;
    std::vector<int> body = game_.rigid_body_of(u, v);
    std::vector<char> in_body(n_, 0);
    for (int w : body) in_body[w] = 1;
    std::vector<std::vector<int>> kept;
    kept.reserve(clusters_.size() + 1);
    for (auto& c : clusters_) {
      int shared = 0;
      for (int w : c)
        if (in_body[w] && ++shared >= 2) break;
      if (shared < 2) kept.push_back(std::move(c));
    }
    largest_ = std::max(largest_, static_cast<int>(body.size()));
    kept.push_back(std::move(body));
    clusters_ = std::move(kept);
    return &clusters_.back();
  }

  int largest() const { return largest_; }
  bool all_vertices_rigid() const { return game_.spanning_rigid(); }

 private:
  PebbleGame23 game_;
  int n_;
  std::vector<std::vector<int>> clusters_;
  int largest_ = 1;
};

// Does a rigid body touch all four borders of the triangular patch?
bool touches_all_borders(const std::vector<int>& body, const LatticePatch& patch) {
  bool top = false, bottom = false, left = false, right = false;
  for (int v : body) {
    const int r = v / patch.cols;
    const int c = v % patch.cols;
    top = top || r == 0;
    bottom = bottom || r == patch.rows - 1;
    left = left || c == 0;
    right = right || c == patch.cols - 1;
  }
  return top && bottom && left && right;
}

}  // namespace

PercolationTrajectory run_percolation(const LatticePatch& patch, double p, std::uint64_t seed,
                                      const PercolationOptions& options) {
  const auto sequence = insertion_sequence(patch, p, Rng(seed), options);
  const int n = patch.n;
  ClusterTracker tracker(n);
  PercolationTrajectory traj;
  traj.eta_at_rigidity = std::numeric_limits<double>::quiet_NaN();
  traj.snapshots.push_back({0, 0.0, 1, false});

  int edge_count = 0;
  bool spanning = false;
  for (const auto& [u, v] : sequence) {
    tracker.insert(u, v);
    ++edge_count;
    if (!spanning && tracker.all_vertices_rigid()) {
      spanning = true;
      traj.eta_at_rigidity = eta_of(edge_count, n);
    }
    traj.snapshots.push_back(
        {edge_count, eta_of(edge_count, n), spanning ? n : tracker.largest(), spanning});
  }
  traj.final_spanning = spanning;
  return traj;
}

namespace {

// One sweep trial. On triangular patches the rigidity event is the
// Duxbury-Thorpe one: a rigid cluster touching all four patch borders (a
// whole-patch rigid component is boundary-dominated on open patches and only
// appears far above the bulk threshold). On complete-graph patches there is
// no geometry, so the event is all vertices in one rigid body.
std::pair<bool, double> run_sweep_trial(const LatticePatch& patch, double p, std::uint64_t seed,
                                        const PercolationOptions& options) {
  const auto sequence = insertion_sequence(patch, p, Rng(seed), options);
  const bool geometric = patch.kind == PatchKind::Triangular;
  ClusterTracker tracker(patch.n);
  int edge_count = 0;
  for (const auto& [u, v] : sequence) {
    const std::vector<int>* body = tracker.insert(u, v);
    ++edge_count;
    const bool rigid_event = geometric
                                 ? (body != nullptr && touches_all_borders(*body, patch))
                                 : tracker.all_vertices_rigid();
    if (rigid_event) return {true, eta_of(edge_count, patch.n)};
  }
  return {false, std::numeric_limits<double>::quiet_NaN()};
}

}  // namespace

std::vector<SweepRow> sweep(const LatticePatch& patch, const std::vector<double>& p_values,
                            int trials_per_p, std::uint64_t seed, int jobs,
                            const PercolationOptions& options) {
  if (trials_per_p < 1) throw InvariantError("sweep needs trials_per_p >= 1");
  const Rng base(seed);
  const size_t total = p_values.size() * static_cast<size_t>(trials_per_p);
  std::vector<char> rigid(total, 0);
  std::vector<double> eta_first(total, 0.0);
  parallel_for(jobs, total, [&](std::size_t task) {
    const size_t pi = task / trials_per_p;
    const size_t trial = task % trials_per_p;
    const std::uint64_t s = base.derive(pi).derive(trial).next_u64();
    const auto [hit, eta1] = run_sweep_trial(patch, p_values[pi], s, options);
    rigid[task] = hit ? 1 : 0;
    eta_first[task] = eta1;
  });

  std::vector<SweepRow> rows;
  for (size_t pi = 0; pi < p_values.size(); ++pi) {
    SweepRow row;
    row.p = p_values[pi];
    int hit = 0;
    double eta_sum = 0.0;
    for (int t = 0; t < trials_per_p; ++t) {
      const size_t task = pi * trials_per_p + t;
      if (rigid[task]) {
        ++hit;
        eta_sum += eta_first[task];
      }
    }
    row.fraction_spanning_rigid = static_cast<double>(hit) / trials_per_p;
    row.mean_eta_at_rigidity =
        hit > 0 ? eta_sum / hit : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dg
