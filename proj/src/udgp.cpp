#include "dg/udgp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "dg/geometry.hpp"

namespace dg {

void DistanceList::check_invariants() const {
  if (n <= 0 || K <= 0) throw InvariantError("distance list needs positive n and K");
  if (m() > n * (n - 1) / 2) throw InvariantError("more values than vertex pairs");
  for (double v : values)
    if (!(v > 0.0) || !std::isfinite(v)) throw InvariantError("distance values must be positive");
}

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first assignment search behind tribond. Values stay sorted with a
// `used` mask. Points are placed canonically: point 0 at the origin, point 1
// on the first axis at the largest value (some pair realizes the maximum, so
// anchoring it to the first two points loses no solutions), points up to K by
// incremental triangulation in the span of the first axes, and every later
// point at a sphere intersection around points 0..K-1 with all remaining
// distances matched against the unused multiset. Values at each slot are
// tried in ascending order, equal values once.
class TribondSearch {
 public:
  TribondSearch(const DistanceList& list, double tol, double timeout_seconds)
      : K_(list.K),
        n_(list.n),
        tol_(tol),
        vals_(list.values),
        used_(list.values.size(), 0),
        x_(list.n, list.K),
        deadline_(timeout_seconds > 0.0
                      ? Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(timeout_seconds))
                      : Clock::time_point::max()) {
    std::sort(vals_.begin(), vals_.end());
  }

  TribondResult run() {
    TribondResult result;
    result.best_depth = 1;
    if (n_ == 1) {
      result.feasible = true;
      result.realization = x_;
      return result;
    }
    const int anchor = static_cast<int>(vals_.size()) - 1;
    used_[anchor] = 1;
    x_.at(1, 0) = vals_[anchor];
    best_depth_ = 2;
    const bool ok = place_point(2, 0.0, 0.0);
    result.feasible = ok && !timed_out_;
    result.best_depth = best_depth_;
    result.timed_out = timed_out_;
    if (result.feasible) result.realization = x_;
    return result;
  }

 private:
  static constexpr int kMaxDim = 8;

  bool expired() {
    if (timed_out_) return true;
    if ((++tick_ & 0x3FF) == 0 && Clock::now() > deadline_) timed_out_ = true;
    return timed_out_;
  }

  double point_dist(int a, int b) const {
    double sum = 0.0;
    for (int k = 0; k < K_; ++k) {
      const double t = x_.at(a, k) - x_.at(b, k);
      sum += t * t;
    }
    return std::sqrt(sum);
  }

  // `key0`/`key1` carry the canonical-order floor: points after the anchor
  // pair are interchangeable labels, so each point's first two slot values
  // may be required to be lexicographically nondecreasing along the
  // placement order. Every point set then admits exactly one placement
  // sequence instead of (n-2)! relabelings.
  bool place_point(int j, double key0, double key1) {
    if (j >= n_) return verify_full();
    if (j <= K_) {
      std::vector<int> slots(j, -1);
      std::vector<double> placed_dist(static_cast<size_t>(j) * j, 0.0);
      for (int a = 0; a < j; ++a)
        for (int b = 0; b < j; ++b) placed_dist[a * j + b] = a == b ? 0.0 : point_dist(a, b);
      return choose_slot(nullptr, j, j, 0, slots, placed_dist, key0, key1);
    }
    // trilateration references are the first K points from here on
    double centers[kMaxDim * kMaxDim];
    for (int r = 0; r < K_; ++r)
      for (int k = 0; k < K_; ++k) centers[r * K_ + k] = x_.at(r, k);
    try {
      const Trilaterator tri(centers, K_);
      std::vector<int> slots(K_, -1);
      std::vector<double> placed_dist(static_cast<size_t>(K_) * K_, 0.0);
      for (int a = 0; a < K_; ++a)
        for (int b = 0; b < K_; ++b) placed_dist[a * K_ + b] = a == b ? 0.0 : point_dist(a, b);
      return choose_slot(&tri, j, K_, 0, slots, placed_dist, key0, key1);
    } catch (const DegenerateCenters&) {
      return false;  // degenerate base; this branch cannot be extended
    }
  }

  // Chooses the value for slot s of point j (nslots in total), with pairwise
  // triangle pruning against the slots already fixed and the canonical-order
  // floor on the first two slots.
  bool choose_slot(const Trilaterator* tri, int j, int nslots, int s, std::vector<int>& slots,
                   const std::vector<double>& placed_dist, double key0, double key1) {
    if (expired()) return false;
    if (s == nslots)
      return tri ? extend(*tri, j, slots) : place_simplex_and_go(j, slots);
    int start = 0;
    if (s == 0) {
      start = static_cast<int>(
          std::lower_bound(vals_.begin(), vals_.end(), key0) - vals_.begin());
    } else if (s == 1) {
      if (vals_[slots[0]] == key0)
        start = static_cast<int>(
            std::lower_bound(vals_.begin(), vals_.end(), key1) - vals_.begin());
      // the first base triangle may also assume d(0,2) <= d(1,2): swapping
      // the anchor labels is a congruence
      if (!tri && j == 2) start = std::max(start, slots[0] + 1);
    }
    double prev = -1.0;
    for (int idx = start; idx < static_cast<int>(vals_.size()); ++idx) {
      if (used_[idx] || vals_[idx] == prev) continue;
      prev = vals_[idx];
      bool ok = true;
      for (int t = 0; t < s && ok; ++t) {
        const double dst = placed_dist[t * nslots + s];
        const double rs = vals_[idx];
        const double rt = vals_[slots[t]];
        if (std::fabs(rs - rt) > dst + tol_ || dst > rs + rt + tol_) ok = false;
      }
      if (!ok) continue;
      slots[s] = idx;
      used_[idx] = 1;
      if (choose_slot(tri, j, nslots, s + 1, slots, placed_dist, key0, key1)) return true;
      used_[idx] = 0;
      slots[s] = -1;
      if (timed_out_) return false;
    }
    return false;
  }

  // Canonical placement of point j <= K in the span of the first j axes; the
  // last coordinate nonnegative (the mirror is congruent). False on geometric
  // inconsistency or a degenerate pivot.
  bool place_simplex_and_go(int j, const std::vector<int>& slots) {
    const double d0 = vals_[slots[0]];
    double p[kMaxDim] = {0};
    double consumed = 0.0;
    for (int t = 1; t < j; ++t) {
      double xt_sq = 0.0;
      for (int k = 0; k < t; ++k) xt_sq += x_.at(t, k) * x_.at(t, k);
      double rhs = 0.5 * (d0 * d0 + xt_sq - vals_[slots[t]] * vals_[slots[t]]);
      for (int k = 0; k < t - 1; ++k) rhs -= x_.at(t, k) * p[k];
      const double pivot = x_.at(t, t - 1);
      if (std::fabs(pivot) <= 1e-9 * std::max(1.0, d0)) return false;
      p[t - 1] = rhs / pivot;
      consumed += p[t - 1] * p[t - 1];
    }
    const double disc = d0 * d0 - consumed;
    if (disc < -tol_ * std::max(1.0, d0 * d0)) return false;
    for (int k = 0; k < K_; ++k) x_.at(j, k) = k < j - 1 ? p[k] : 0.0;
    x_.at(j, j - 1) = std::sqrt(std::max(disc, 0.0));
    best_depth_ = std::max(best_depth_, j + 1);
    return place_point(j + 1, vals_[slots[0]], j >= 2 ? vals_[slots[1]] : 0.0);
  }

  bool extend(const Trilaterator& tri, int j, const std::vector<int>& slots) {
    double radii[kMaxDim];
    for (int r = 0; r < K_; ++r) radii[r] = vals_[slots[r]];
    double cand[2 * kMaxDim];
    const int count = tri.solve(radii, tol_, cand);
    for (int c = 0; c < count; ++c) {
      const double* p = cand + static_cast<size_t>(c) * K_;
      // every distance to a placed non-reference point must be available
      std::vector<double> needed;
      needed.reserve(j - K_);
      for (int w = K_; w < j; ++w) {
        double s = 0.0;
        for (int k = 0; k < K_; ++k) {
          const double t = p[k] - x_.at(w, k);
          s += t * t;
        }
        needed.push_back(std::sqrt(s));
      }
      std::sort(needed.begin(), needed.end());
      std::vector<int> taken;
      if (!match_multiset(needed, taken)) continue;
      for (int k = 0; k < K_; ++k) x_.at(j, k) = p[k];
      best_depth_ = std::max(best_depth_, j + 1);
      if (place_point(j + 1, vals_[slots[0]], K_ >= 2 ? vals_[slots[1]] : 0.0)) return true;
      for (int idx : taken) used_[idx] = 0;
      if (timed_out_) return false;
    }
    return false;
  }

  // Greedy matching of sorted required distances against unused values within
  // tol; with equal acceptance windows, smallest-available-first is optimal.
  // On success the consumed indices stay marked and land in `taken`.
  bool match_multiset(const std::vector<double>& needed, std::vector<int>& taken) {
    for (const double r : needed) {
      auto it = std::lower_bound(vals_.begin(), vals_.end(), r - tol_);
      int idx = static_cast<int>(it - vals_.begin());
      const int size = static_cast<int>(vals_.size());
      while (idx < size && vals_[idx] <= r + tol_ && used_[idx]) ++idx;
      if (idx >= size || vals_[idx] > r + tol_) {
        for (int t : taken) used_[t] = 0;
        taken.clear();
        return false;
      }
      used_[idx] = 1;
      taken.push_back(idx);
    }
    return true;
  }

  bool verify_full() const {
    std::vector<double> realized;
    realized.reserve(static_cast<size_t>(n_) * (n_ - 1) / 2);
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b) realized.push_back(point_dist(a, b));
    std::sort(realized.begin(), realized.end());
    for (size_t i = 0; i < realized.size(); ++i)
      if (std::fabs(realized[i] - vals_[i]) > tol_) return false;
    return true;
  }

  int K_, n_;
  double tol_;
  std::vector<double> vals_;
  std::vector<char> used_;
  Realization x_;
  Clock::time_point deadline_;
  bool timed_out_ = false;
  std::uint64_t tick_ = 0;
  int best_depth_ = 1;
};

}  // namespace

TribondResult tribond(const DistanceList& list, double tol, double timeout_seconds) {
  list.check_invariants();
  if (list.m() != list.n * (list.n - 1) / 2)
    throw BadCardinality("tribond needs the complete list of n(n-1)/2 values");
  if (list.K > 8) throw UnsupportedDimension("tribond capped at K <= 8");
  TribondSearch search(list, tol, timeout_seconds);
  return search.run();
}

double udgp_cost(const Realization& x, const DistanceList& list, const Assignment& a) {
  if (a.pairs.size() != list.values.size())
    throw IncompleteAssignment("assignment must cover every list index");
  std::vector<std::pair<int, int>> seen;
  double cost = 0.0;
  for (size_t i = 0; i < a.pairs.size(); ++i) {
    auto [u, v] = a.pairs[i];
    if (u == v || u < 0 || v < 0 || u >= x.n || v >= x.n)
      throw IncompleteAssignment("assignment pair out of range");
    const std::pair<int, int> key = std::minmax(u, v);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw IncompleteAssignment("assignment reuses a vertex pair");
    seen.push_back(key);
    const double r = point_distance(x, u, v) - list.values[i];
    cost += r * r;
  }
  return cost;
}

namespace {

// Rectangular Hungarian algorithm, rows <= cols, O(rows^2 * cols).
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const int nr = static_cast<int>(cost.size());
  const int nc = static_cast<int>(cost[0].size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(nr + 1, 0.0), v(nc + 1, 0.0);
  std::vector<int> p(nc + 1, 0), way(nc + 1, 0);
  for (int i = 1; i <= nr; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(nc + 1, kInf);
    std::vector<char> used(nc + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= nc; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= nc; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(nr, -1);
  for (int j = 1; j <= nc; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

}  // namespace

std::pair<Assignment, double> best_assignment(const Realization& x, const DistanceList& list) {
  list.check_invariants();
  if (x.n != list.n || x.K != list.K)
    throw DimensionMismatch("best_assignment: realization and list disagree on n or K");
  const int m = list.m();
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < x.n; ++a)
    for (int b = a + 1; b < x.n; ++b) pairs.emplace_back(a, b);

  Assignment assignment;
  assignment.pairs.resize(m);
  double cost = 0.0;
  if (m == static_cast<int>(pairs.size())) {
    // complete list: matching sorted distances to sorted values is optimal
    // for the quadratic cost
    std::vector<int> by_dist(pairs.size());
    std::iota(by_dist.begin(), by_dist.end(), 0);
    std::stable_sort(by_dist.begin(), by_dist.end(), [&](int a, int b) {
      return point_distance(x, pairs[a].first, pairs[a].second) <
             point_distance(x, pairs[b].first, pairs[b].second);
    });
    std::vector<int> by_value(m);
    std::iota(by_value.begin(), by_value.end(), 0);
    std::stable_sort(by_value.begin(), by_value.end(),
                     [&](int a, int b) { return list.values[a] < list.values[b]; });
    for (int r = 0; r < m; ++r) {
      assignment.pairs[by_value[r]] = pairs[by_dist[r]];
      const double diff =
          point_distance(x, pairs[by_dist[r]].first, pairs[by_dist[r]].second) -
          list.values[by_value[r]];
      cost += diff * diff;
    }
    return {assignment, cost};
  }

  std::vector<std::vector<double>> costmat(m, std::vector<double>(pairs.size()));
  for (int i = 0; i < m; ++i)
    for (size_t j = 0; j < pairs.size(); ++j) {
      const double diff = point_distance(x, pairs[j].first, pairs[j].second) - list.values[i];
      costmat[i][j] = diff * diff;
    }
  const std::vector<int> row_to_col = min_cost_assignment(costmat);
  for (int i = 0; i < m; ++i) {
    assignment.pairs[i] = pairs[row_to_col[i]];
    cost += costmat[i][row_to_col[i]];
  }
  return {assignment, cost};
}

}  // namespace dg
