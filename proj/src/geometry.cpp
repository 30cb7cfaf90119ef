#include "dg/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "dg/errors.hpp"

namespace dg {

namespace {

double dot(const double* a, const double* b, int n) {
  double s = 0.0;
  for (int k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

}  // namespace

Trilaterator::Trilaterator(const double* centers, int K, double degeneracy_tol) : K_(K) {
  c1_.assign(centers, centers + K);
  sq_norms_.resize(K);
  double spread = 0.0;
  for (int j = 0; j < K; ++j) {
    sq_norms_[j] = dot(centers + static_cast<size_t>(j) * K, centers + static_cast<size_t>(j) * K, K);
    for (int k = 0; k < K; ++k)
      spread = std::max(spread, std::fabs(centers[static_cast<size_t>(j) * K + k] - c1_[k]));
  }
  const double eps = degeneracy_tol * std::max(spread, 1.0);

  // Orthonormalize the center differences; rref_ keeps the triangular
  // coefficients needed to solve the difference equations later.
  basis_.assign(static_cast<size_t>(K - 1) * K, 0.0);
  rref_.assign(static_cast<size_t>(K - 1) * (K - 1), 0.0);
  std::vector<double> w(K);
  for (int j = 1; j < K; ++j) {
    for (int k = 0; k < K; ++k) w[k] = centers[static_cast<size_t>(j) * K + k] - c1_[k];
    for (int i = 0; i < j - 1; ++i) {
      const double proj = dot(w.data(), &basis_[static_cast<size_t>(i) * K], K);
      rref_[static_cast<size_t>(j - 1) * (K - 1) + i] = proj;
      for (int k = 0; k < K; ++k) w[k] -= proj * basis_[static_cast<size_t>(i) * K + k];
    }
    const double norm = std::sqrt(dot(w.data(), w.data(), K));
    if (norm <= eps) throw DegenerateCenters("sphere centers are affinely dependent");
    rref_[static_cast<size_t>(j - 1) * (K - 1) + (j - 1)] = norm;
    for (int k = 0; k < K; ++k) basis_[static_cast<size_t>(j - 1) * K + k] = w[k] / norm;
  }

  // Complete the basis with the unit normal: take the coordinate axis with
  // the largest residual after removing in-plane components.
  normal_.assign(K, 0.0);
  double best = -1.0;
  std::vector<double> cand(K);
  for (int axis = 0; axis < K; ++axis) {
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[axis] = 1.0;
    for (int i = 0; i < K - 1; ++i) {
      const double proj = dot(cand.data(), &basis_[static_cast<size_t>(i) * K], K);
      for (int k = 0; k < K; ++k) cand[k] -= proj * basis_[static_cast<size_t>(i) * K + k];
    }
    const double norm2 = dot(cand.data(), cand.data(), K);
    if (norm2 > best) {
      best = norm2;
      normal_ = cand;
    }
  }
  const double nn = std::sqrt(best);
  for (int k = 0; k < K; ++k) normal_[k] /= nn;

  c1_coords_.resize(K);
  for (int i = 0; i < K - 1; ++i)
    c1_coords_[i] = dot(c1_.data(), &basis_[static_cast<size_t>(i) * K], K);
  c1_coords_[K - 1] = dot(c1_.data(), normal_.data(), K);
}

int Trilaterator::solve(const double* radii, double tol, double* out, double merge_eps) const {
  const int K = K_;
  // In-plane coordinates from the pairwise difference equations
  //   (c_j - c_1) . p = (r_1^2 - r_j^2 + |c_j|^2 - |c_1|^2) / 2.
  double alpha[15];  // K <= 8 wherever this runs; keep the hot path allocation free
  for (int j = 1; j < K; ++j) {
    double b = 0.5 * (radii[0] * radii[0] - radii[j] * radii[j] + sq_norms_[j] - sq_norms_[0]);
    for (int i = 0; i < j - 1; ++i) b -= rref_[static_cast<size_t>(j - 1) * (K - 1) + i] * alpha[i];
    alpha[j - 1] = b / rref_[static_cast<size_t>(j - 1) * (K - 1) + (j - 1)];
  }

  double inplane = 0.0;
  for (int i = 0; i < K - 1; ++i) {
    const double d = alpha[i] - c1_coords_[i];
    inplane += d * d;
  }
  const double disc = radii[0] * radii[0] - inplane;
  const double delta = c1_coords_[K - 1];

  auto emit = [&](double t, double* dst) {
    for (int k = 0; k < K; ++k) {
      double v = t * normal_[k];
      for (int i = 0; i < K - 1; ++i) v += alpha[i] * basis_[static_cast<size_t>(i) * K + k];
      dst[k] = v;
    }
  };

  if (disc < 0.0) {
    // Possibly tangent within tolerance: accept the closest point when its
    // residual against sphere 1 is small enough.
    const double rho = std::sqrt(inplane);
    if (std::fabs(rho - radii[0]) <= tol) {
      emit(delta, out);
      return 1;
    }
    return 0;
  }
  const double root = std::sqrt(disc);
  if (2.0 * root < merge_eps) {
    emit(delta, out);
    return 1;
  }
  emit(delta - root, out);
  emit(delta + root, out + K);
  return 2;
}

std::optional<std::vector<double>> hyperplane_normal(const double* points, int dim, double tol) {
  const int K = dim;
  double spread = 0.0;
  for (int j = 1; j < K; ++j)
    for (int k = 0; k < K; ++k)
      spread = std::max(spread, std::fabs(points[static_cast<size_t>(j) * K + k] - points[k]));
  const double eps = tol * std::max(spread, 1.0);

  std::vector<double> basis;
  std::vector<double> w(K);
  for (int j = 1; j < K; ++j) {
    for (int k = 0; k < K; ++k) w[k] = points[static_cast<size_t>(j) * K + k] - points[k];
    for (size_t i = 0; i * K < basis.size(); ++i) {
      const double proj = dot(w.data(), &basis[i * K], K);
      for (int k = 0; k < K; ++k) w[k] -= proj * basis[i * K + k];
    }
    const double norm = std::sqrt(dot(w.data(), w.data(), K));
    if (norm <= eps) return std::nullopt;
    for (int k = 0; k < K; ++k) basis.push_back(w[k] / norm);
  }

  std::vector<double> normal(K, 0.0);
  double best = -1.0;
  std::vector<double> cand(K);
  for (int axis = 0; axis < K; ++axis) {
    std::fill(cand.begin(), cand.end(), 0.0);
    cand[axis] = 1.0;
    for (int i = 0; i < K - 1; ++i) {
      const double proj = dot(cand.data(), &basis[static_cast<size_t>(i) * K], K);
      for (int k = 0; k < K; ++k) cand[k] -= proj * basis[static_cast<size_t>(i) * K + k];
    }
    const double norm2 = dot(cand.data(), cand.data(), K);
    if (norm2 > best) {
      best = norm2;
      normal = cand;
    }
  }
  const double nn = std::sqrt(best);
  if (nn <= eps) return std::nullopt;
  for (int k = 0; k < K; ++k) normal[k] /= nn;
  return normal;
}

}  // namespace dg
