#include "dg/core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace dg {

bool DgpInstance::has_interval_edges() const {
  for (const Edge& e : edges)
    if (!e.exact) return true;
  return false;
}

void DgpInstance::check_invariants() const {
  if (n <= 0) throw InvariantError("vertex count must be positive");
  if (K <= 0) throw InvariantError("dimension K must be positive");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
      throw InvariantError("edge endpoint out of range");
    if (e.u == e.v) throw InvariantError("self loop");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) throw InvariantError("duplicate edge");
    if (e.exact) {
      if (!(e.dl > 0.0)) throw InvariantError("exact weight must be positive");
    } else {
      if (!(e.dl > 0.0) || !(e.dl <= e.du))
        throw InvariantError("interval weight must satisfy 0 < dl <= du");
    }
    if (!std::isfinite(e.dl) || !std::isfinite(e.du))
      throw InvariantError("weight must be finite");
  }
}

Framework::Framework(DgpInstance inst, Realization x)
    : instance(std::move(inst)), realization(std::move(x)) {
  if (instance.n != realization.n || instance.K != realization.K)
    throw DimensionMismatch("framework instance and realization disagree on n or K");
}

double point_distance(const Realization& x, int u, int v) {
  const double* a = x.row(u);
  const double* b = x.row(v);
  double s = 0.0;
  for (int k = 0; k < x.K; ++k) {
    const double t = a[k] - b[k];
    s += t * t;
  }
  return std::sqrt(s);
}

ValidationReport validate(const DgpInstance& instance, const Realization& x, double tol) {
  if (instance.n != x.n || instance.K != x.K)
    throw DimensionMismatch("validate: instance and realization disagree on n or K");
  ValidationReport report;
  double sumsq = 0.0;
  for (const Edge& e : instance.edges) {
    const double dist = point_distance(x, e.u, e.v);
    double err;
    if (e.exact) {
      err = std::fabs(dist - e.d());
    } else {
      err = std::max({0.0, e.dl - dist, dist - e.du});
    }
    sumsq += err * err;
    report.max_abs_error = std::max(report.max_abs_error, err);
    if (err > tol) report.violated_edges.push_back({e.u, e.v, dist});
  }
  report.mean_sq_error = instance.edges.empty() ? 0.0 : sumsq / instance.edges.size();
  return report;
}

namespace {

// Greedily picks K+1 affinely independent points of x; empty when the affine
// hull is degenerate. Orthonormalizes difference vectors against the base.
std::vector<int> independent_frame(const Realization& x, double eps) {
  const int K = x.K;
  std::vector<int> idx;
  if (x.n == 0) return idx;
  idx.push_back(0);
  std::vector<std::vector<double>> basis;
  for (int i = 1; i < x.n && static_cast<int>(idx.size()) < K + 1; ++i) {
    std::vector<double> w(K);
    for (int k = 0; k < K; ++k) w[k] = x.at(i, k) - x.at(idx[0], k);
    for (const auto& q : basis) {
      double dot = 0.0;
      for (int k = 0; k < K; ++k) dot += w[k] * q[k];
      for (int k = 0; k < K; ++k) w[k] -= dot * q[k];
    }
    double norm = 0.0;
    for (int k = 0; k < K; ++k) norm += w[k] * w[k];
    norm = std::sqrt(norm);
    if (norm > eps) {
      for (int k = 0; k < K; ++k) w[k] /= norm;
      basis.push_back(std::move(w));
      idx.push_back(i);
    }
  }
  if (static_cast<int>(idx.size()) < K + 1) idx.clear();
  return idx;
}

// Sign of det[x_{i1}-x_{i0}, ..., x_{iK}-x_{i0}] via Gaussian elimination.
int orientation_sign(const Realization& x, const std::vector<int>& idx, double eps) {
  const int K = x.K;
  std::vector<double> m(static_cast<size_t>(K) * K);
  for (int c = 0; c < K; ++c)
    for (int k = 0; k < K; ++k)
      m[static_cast<size_t>(k) * K + c] = x.at(idx[c + 1], k) - x.at(idx[0], k);
  int sign = 1;
  for (int col = 0; col < K; ++col) {
    int piv = col;
    for (int r = col + 1; r < K; ++r)
      if (std::fabs(m[static_cast<size_t>(r) * K + col]) >
          std::fabs(m[static_cast<size_t>(piv) * K + col]))
        piv = r;
    const double p = m[static_cast<size_t>(piv) * K + col];
    if (std::fabs(p) <= eps) return 0;
    if (piv != col) {
      for (int c = 0; c < K; ++c)
        std::swap(m[static_cast<size_t>(piv) * K + c], m[static_cast<size_t>(col) * K + c]);
      sign = -sign;
    }
    if (p < 0.0) sign = -sign;
    for (int r = col + 1; r < K; ++r) {
      const double f = m[static_cast<size_t>(r) * K + col] / p;
      for (int c = col; c < K; ++c)
        m[static_cast<size_t>(r) * K + c] -= f * m[static_cast<size_t>(col) * K + c];
    }
  }
  return sign;
}

}  // namespace

bool congruent(const Realization& x, const Realization& y, double tol, bool allow_reflection) {
  if (x.n != y.n || x.K != y.K)
    throw DimensionMismatch("congruent: realizations disagree on n or K");
  double scale = 0.0;
  for (int u = 0; u < x.n; ++u) {
    for (int v = u + 1; v < x.n; ++v) {
      const double du = point_distance(x, u, v);
      const double dv = point_distance(y, u, v);
      if (std::fabs(du - dv) > tol) return false;
      scale = std::max(scale, du);
    }
  }
  if (allow_reflection) return true;
  // Orientation test on a shared frame of K+1 affinely independent points.
  // A configuration whose affine hull is not full-dimensional can be mapped
  // to its mirror image by a rotation, so it passes.
  const double eps = std::max(1e-12, 1e-9 * scale);
  const std::vector<int> frame = independent_frame(x, eps);
  if (frame.empty()) return true;
  const int sx = orientation_sign(x, frame, eps);
  const int sy = orientation_sign(y, frame, eps);
  if (sx == 0 || sy == 0) return true;
  return sx == sy;
}

double eta(const DgpInstance& instance) {
  if (instance.n < 2) return 0.0;
  return 2.0 * static_cast<double>(instance.edges.size()) /
         (static_cast<double>(instance.n) * (instance.n - 1));
}

}  // namespace dg
