#include "dg/bp.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "dg/geometry.hpp"
#include "dg/parallel.hpp"

namespace dg {

DiscretizationOrder classify_order(const DgpInstance& instance) {
  instance.check_invariants();
  const int n = instance.n;
  const int K = instance.K;

  std::vector<std::vector<int>> exact_preds(n);  // sorted ascending
  std::map<std::pair<int, int>, int> edge_of;
  for (size_t i = 0; i < instance.edges.size(); ++i) {
    const Edge& e = instance.edges[i];
    const auto [lo, hi] = std::minmax(e.u, e.v);
    edge_of[{lo, hi}] = static_cast<int>(i);
    if (e.exact) exact_preds[hi].push_back(lo);
  }
  for (auto& preds : exact_preds) std::sort(preds.begin(), preds.end());

  const auto adjacent_exact = [&](int u, int v) {
    const auto& preds = exact_preds[std::max(u, v)];
    return std::binary_search(preds.begin(), preds.end(), std::min(u, v));
  };

  // Initial clique: every vertex up to K adjacent to all of its predecessors
  // with an exact distance; nothing can be placed otherwise.
  bool clique_ok = true;
  for (int v = 1; v <= std::min(n - 1, K) && clique_ok; ++v)
    for (int u = 0; u < v && clique_ok; ++u) clique_ok = adjacent_exact(u, v);

  bool dmdgp_ok = clique_ok;
  bool ddgp_ok = clique_ok;
  for (int v = K + 1; v < n && ddgp_ok; ++v) {
    if (static_cast<int>(exact_preds[v].size()) < K) {
      dmdgp_ok = ddgp_ok = false;
      break;
    }
    for (int u = v - K; u < v && dmdgp_ok; ++u)
      if (!adjacent_exact(u, v)) dmdgp_ok = false;
  }

  DiscretizationOrder order;
  if (!ddgp_ok) {
    order.kind = OrderKind::NotDiscretizable;
    order.pruning_edges = instance.edges;
    return order;
  }
  order.kind = dmdgp_ok ? OrderKind::DMDGP : OrderKind::DDGP;
  order.reference_predecessors.resize(n);
  std::vector<char> is_reference(instance.edges.size(), 0);
  for (int v = 1; v < n; ++v) {
    std::vector<int>& refs = order.reference_predecessors[v];
    if (v <= K) {
      for (int u = 0; u < v; ++u) refs.push_back(u);
    } else if (dmdgp_ok) {
      for (int u = v - K; u < v; ++u) refs.push_back(u);
    } else {
      // K largest-index exact adjacent predecessors
      const auto& preds = exact_preds[v];
      refs.assign(preds.end() - K, preds.end());
    }
    for (int u : refs) is_reference[edge_of.at(std::minmax(u, v))] = 1;
  }
  for (size_t i = 0; i < instance.edges.size(); ++i) {
    if (is_reference[i])
      order.discretization_edges.push_back(instance.edges[i]);
    else
      order.pruning_edges.push_back(instance.edges[i]);
  }
  return order;
}

std::vector<std::vector<double>> sphere_intersect(const std::vector<std::vector<double>>& centers,
                                                  const std::vector<double>& radii, double tol) {
  const int K = static_cast<int>(centers.size());
  if (K < 1 || radii.size() != centers.size())
    throw InvariantError("sphere_intersect needs K centers and K radii");
  std::vector<double> flat;
  flat.reserve(static_cast<size_t>(K) * K);
  for (const auto& c : centers) {
    if (static_cast<int>(c.size()) != K)
      throw DimensionMismatch("sphere_intersect centers must live in R^K");
    flat.insert(flat.end(), c.begin(), c.end());
  }
  const Trilaterator tri(flat.data(), K);
  std::vector<double> out(2 * static_cast<size_t>(K));
  const int count = tri.solve(radii.data(), tol, out.data());
  std::vector<std::vector<double>> points;
  for (int c = 0; c < count; ++c) {
    const double* p = out.data() + static_cast<size_t>(c) * K;
    bool ok = true;
    for (int j = 0; j < K && ok; ++j) {
      double s = 0.0;
      for (int k = 0; k < K; ++k) {
        const double t = p[k] - centers[j][k];
        s += t * t;
      }
      ok = std::fabs(std::sqrt(s) - radii[j]) <= tol;
    }
    if (ok) points.emplace_back(p, p + K);
  }
  return points;
}

namespace {

constexpr double kMergeEps = 1e-7;  // sphere intersection points closer than
                                    // this count as one candidate

struct CheckEdge {
  int u;
  double dl, du;
  bool exact;
};

// Read-only search tables shared by all workers; the per-worker accumulators
// (level counts, pruned count, solution list) are passed through the calls.
class BpSearch {
 public:
  static constexpr int kMaxDim = 8;

  BpSearch(const DgpInstance& inst, const DiscretizationOrder& order, const BpOptions& opt)
      : opt_(opt), n_(inst.n), K_(inst.K), refs_(&order.reference_predecessors) {
    ref_dist_.resize(n_);
    checks_.resize(n_);
    std::map<std::pair<int, int>, const Edge*> by_pair;
    for (const Edge& e : inst.edges) by_pair[std::minmax(e.u, e.v)] = &e;
    for (int v = 1; v < n_; ++v) {
      std::vector<char> is_ref(v, 0);
      for (int u : (*refs_)[v]) {
        ref_dist_[v].push_back(by_pair.at(std::minmax(u, v))->d());
        is_ref[u] = 1;
      }
      for (int u = 0; u < v; ++u) {
        const auto it = by_pair.find({u, v});
        if (it == by_pair.end() || is_ref[u]) continue;
        const Edge& e = *it->second;
        checks_[v].push_back({u, e.dl, e.du, e.exact});
      }
    }
  }

  int first_free_level() const { return std::min(n_, K_ + 1); }

  // Canonical placement of the initial clique; one state, or two when the
  // reflection at vertex K stays free. Levels below first_free_level() are
  // accounted here.
  std::vector<Realization> initial_states(std::vector<std::int64_t>& level_counts) const {
    Realization x(n_, K_);
    level_counts[0] += 1;
    for (int v = 1; v < std::min(n_, K_); ++v) {
      place_simplex_vertex(x, v);
      level_counts[v] += 1;
    }
    if (n_ <= K_) return {x};
    const double root = place_simplex_vertex(x, K_);
    std::vector<Realization> states;
    states.push_back(x);
    if (!opt_.fix_reflection && 2.0 * root >= kMergeEps) {
      Realization y = x;
      y.at(K_, K_ - 1) = -root;
      states.push_back(std::move(y));
    }
    level_counts[K_] += static_cast<std::int64_t>(states.size());
    return states;
  }

  // Children of `state` at `level`: the sphere intersection candidates that
  // survive the pruning edges.
  std::vector<Realization> expand(const Realization& state, int level,
                                  std::vector<std::int64_t>& level_counts,
                                  std::int64_t& pruned) const {
    std::vector<Realization> children;
    const std::vector<int>& refs = (*refs_)[level];
    double centers[kMaxDim * kMaxDim];
    for (int j = 0; j < K_; ++j)
      for (int k = 0; k < K_; ++k) centers[j * K_ + k] = state.at(refs[j], k);
    const Trilaterator tri(centers, K_);
    double cand[2 * kMaxDim];
    const int count = tri.solve(ref_dist_[level].data(), opt_.tol, cand, kMergeEps);
    for (int c = 0; c < count; ++c) {
      const double* p = cand + static_cast<size_t>(c) * K_;
      if (!feasible(state, level, p)) {
        ++pruned;
        continue;
      }
      Realization child = state;
      for (int k = 0; k < K_; ++k) child.at(level, k) = p[k];
      level_counts[level] += 1;
      children.push_back(std::move(child));
    }
    return children;
  }

  void search(const Realization& state, int level, std::vector<std::int64_t>& level_counts,
              std::int64_t& pruned, std::vector<Realization>& solutions, bool honor_cap,
              bool& stopped) const {
    if (stopped) return;
    if (level == n_) {
      store_solution(state, solutions);
      if (honor_cap && opt_.max_solutions > 0 && solutions.size() >= opt_.max_solutions)
        stopped = true;
      return;
    }
    for (const Realization& child : expand(state, level, level_counts, pruned)) {
      search(child, level + 1, level_counts, pruned, solutions, honor_cap, stopped);
      if (stopped) return;
    }
  }

  void store_solution(const Realization& x, std::vector<Realization>& solutions) const {
    for (const Realization& s : solutions)
      if (congruent(s, x, opt_.tol, opt_.fix_reflection)) return;
    solutions.push_back(x);
  }

 private:
  bool feasible(const Realization& x, int level, const double* p) const {
    for (const CheckEdge& ce : checks_[level]) {
      double s = 0.0;
      for (int k = 0; k < K_; ++k) {
        const double t = p[k] - x.at(ce.u, k);
        s += t * t;
      }
      const double dist = std::sqrt(s);
      if (ce.exact) {
        if (std::fabs(dist - ce.dl) > opt_.tol) return false;
      } else {
        if (dist < ce.dl - opt_.tol || dist > ce.du + opt_.tol) return false;
      }
    }
    return true;
  }

  // Places vertex v (v <= K) in the span of the first v axes from its
  // distances to all predecessors, the last coordinate nonnegative; returns
  // that coordinate. Throws InfeasibleInitialClique.
  double place_simplex_vertex(Realization& x, int v) const {
    const std::vector<double>& d = ref_dist_[v];
    const double d0 = d[0];
    double* p = x.row(v);
    double consumed = 0.0;
    for (int j = 1; j < v; ++j) {
      double xj_sq = 0.0;
      for (int k = 0; k < j; ++k) xj_sq += x.at(j, k) * x.at(j, k);
      double rhs = 0.5 * (d0 * d0 + xj_sq - d[j] * d[j]);
      for (int k = 0; k < j - 1; ++k) rhs -= x.at(j, k) * p[k];
      const double pivot = x.at(j, j - 1);
      if (std::fabs(pivot) <= 1e-9 * std::max(1.0, std::fabs(d0)))
        throw InfeasibleInitialClique("degenerate initial clique");
      p[j - 1] = rhs / pivot;
      consumed += p[j - 1] * p[j - 1];
    }
    const double disc = d0 * d0 - consumed;
    if (disc < -opt_.tol * std::max(1.0, d0 * d0))
      throw InfeasibleInitialClique("initial clique distances are inconsistent");
    const double root = std::sqrt(std::max(disc, 0.0));
    p[v - 1] = root;
    return root;
  }

  const BpOptions opt_;
  int n_, K_;
  const std::vector<std::vector<int>>* refs_;
  std::vector<std::vector<double>> ref_dist_;
  std::vector<std::vector<CheckEdge>> checks_;
};

}  // namespace

SolutionSet bp_solve(const DgpInstance& instance, const BpOptions& options) {
  const DiscretizationOrder order = classify_order(instance);
  if (order.kind == OrderKind::NotDiscretizable)
    throw NotDiscretizable("instance has no usable discretization order");
  if (instance.K > BpSearch::kMaxDim)
    throw UnsupportedDimension("branch-and-prune capped at K <= 8");

  const int n = instance.n;
  const BpSearch search(instance, order, options);
  SolutionSet result;
  result.reflection_fixed = options.fix_reflection;
  result.level_counts.assign(n, 0);

  std::vector<Realization> frontier = search.initial_states(result.level_counts);
  int cut = search.first_free_level();

  // With several workers and no solution cap, deepen the frontier first and
  // hand each subtree to a worker; merging in frontier order reproduces the
  // sequential output exactly.
  const bool parallel = options.jobs > 1 && options.max_solutions == 0;
  if (parallel) {
    while (cut < n && static_cast<int>(frontier.size()) < 4 * options.jobs) {
      std::vector<Realization> next;
      for (const Realization& st : frontier) {
        auto children = search.expand(st, cut, result.level_counts, result.pruned_count);
        for (Realization& ch : children) next.push_back(std::move(ch));
      }
      frontier = std::move(next);
      ++cut;
    }
    std::vector<std::vector<std::int64_t>> counts(frontier.size(),
                                                  std::vector<std::int64_t>(n, 0));
    std::vector<std::int64_t> pruned(frontier.size(), 0);
    std::vector<std::vector<Realization>> sols(frontier.size());
    parallel_for(options.jobs, frontier.size(), [&](std::size_t i) {
      bool stopped = false;
      search.search(frontier[i], cut, counts[i], pruned[i], sols[i], false, stopped);
    });
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (int l = 0; l < n; ++l) result.level_counts[l] += counts[i][l];
      result.pruned_count += pruned[i];
      for (const Realization& x : sols[i]) search.store_solution(x, result.solutions);
    }
    return result;
  }

  bool stopped = false;
  for (const Realization& st : frontier) {
    if (stopped) break;
    search.search(st, cut, result.level_counts, result.pruned_count, result.solutions, true,
                  stopped);
  }
  result.stopped_early = stopped;
  return result;
}

PruningGroup pruning_group(const DiscretizationOrder& order, int n, int K) {
  if (order.kind != OrderKind::DMDGP)
    throw NotDmdgp("pruning group is defined for DMDGP orders only");
  PruningGroup group;
  for (int level = K; level < n; ++level) {
    bool free_level = true;
    for (const Edge& e : order.pruning_edges) {
      const auto [u, v] = std::minmax(e.u, e.v);
      if (u + K < level && level <= v) {
        free_level = false;
        break;
      }
    }
    if (free_level) group.generator_levels.push_back(level);
  }
  if (group.generator_levels.size() >= 63) throw TooLarge("pruning group order overflows");
  group.order = 1ull << group.generator_levels.size();
  return group;
}

Realization partial_reflection(const Realization& x, int level, int K) {
  if (K != x.K) throw DimensionMismatch("partial_reflection: K mismatch");
  if (level < K || level >= x.n)
    throw InvariantError("partial_reflection level must lie in [K, n)");
  std::vector<double> pts(static_cast<size_t>(K) * K);
  for (int j = 0; j < K; ++j)
    for (int k = 0; k < K; ++k) pts[static_cast<size_t>(j) * K + k] = x.at(level - K + j, k);
  const auto normal = hyperplane_normal(pts.data(), K);
  if (!normal)
    throw DegenerateHyperplane("reflection hyperplane points are affinely dependent");
  const double* p0 = x.row(level - 1);
  Realization y = x;
  for (int i = level; i < x.n; ++i) {
    double proj = 0.0;
    for (int k = 0; k < K; ++k) proj += (x.at(i, k) - p0[k]) * (*normal)[k];
    for (int k = 0; k < K; ++k) y.at(i, k) = x.at(i, k) - 2.0 * proj * (*normal)[k];
  }
  return y;
}

SolutionSet orbit_generate(const Realization& x, const PruningGroup& group,
                           const DgpInstance& instance, double tol, bool fix_reflection) {
  if (validate(instance, x, tol).max_abs_error > tol)
    throw InvalidSeedSolution("seed realization does not satisfy the instance");
  SolutionSet result;
  result.reflection_fixed = fix_reflection;
  const size_t s = group.generator_levels.size();
  for (std::uint64_t mask = 0; mask < (1ull << s); ++mask) {
    Realization y = x;
    for (size_t j = 0; j < s; ++j)
      if (mask & (1ull << j)) y = partial_reflection(y, group.generator_levels[j], instance.K);
    if (validate(instance, y, tol).max_abs_error > tol) {
      ++result.pruned_count;
      continue;
    }
    bool duplicate = false;
    for (const Realization& stored : result.solutions)
      if (congruent(stored, y, tol, fix_reflection)) {
        duplicate = true;
        break;
      }
    if (!duplicate) result.solutions.push_back(std::move(y));
  }
  return result;
}

std::optional<std::uint64_t> predicted_solution_count(const DiscretizationOrder& order, int n,
                                                      int K, bool fix_reflection) {
  if (order.kind != OrderKind::DMDGP)
    throw NotDmdgp("predicted count is defined for DMDGP orders only");
  for (const Edge& e : order.pruning_edges)
    if (!e.exact) return std::nullopt;
  const PruningGroup group = pruning_group(order, n, K);
  std::uint64_t exponent = group.generator_levels.size();
  if (fix_reflection && exponent > 0) --exponent;
  return 1ull << exponent;
}

}  // namespace dg
