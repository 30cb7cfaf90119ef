#include "dg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dg/errors.hpp"

namespace dg {

void SquaredEdm::check_invariants(double tol) const {
  if (m.rows() != m.cols()) throw InvariantError("sqEDM must be square");
  for (int i = 0; i < n(); ++i) {
    if (std::fabs(m(i, i)) > tol) throw InvariantError("sqEDM diagonal must be zero");
    for (int j = 0; j < n(); ++j) {
      if (m(i, j) < -tol) throw InvariantError("sqEDM entries must be nonnegative");
      if (std::fabs(m(i, j) - m(j, i)) > tol) throw InvariantError("sqEDM must be symmetric");
    }
  }
}

SquaredEdm sqedm_from_realization(const Realization& x) {
  SquaredEdm D{Matrix(x.n, x.n)};
  for (int u = 0; u < x.n; ++u) {
    for (int v = u + 1; v < x.n; ++v) {
      double s = 0.0;
      for (int k = 0; k < x.K; ++k) {
        const double t = x.at(u, k) - x.at(v, k);
        s += t * t;
      }
      D.m(u, v) = s;
      D.m(v, u) = s;
    }
  }
  return D;
}

GramMatrix gram_from_sqedm(const SquaredEdm& D) {
  const int n = D.n();
  // B = -1/2 J D J expands entrywise to
  // B_uv = -1/2 (D_uv - rowmean_u - rowmean_v + grandmean).
  std::vector<double> rowmean(n, 0.0);
  double grand = 0.0;
  for (int u = 0; u < n; ++u) {
    double s = 0.0;
    for (int v = 0; v < n; ++v) s += D.m(u, v);
    rowmean[u] = s / n;
    grand += s;
  }
  grand /= static_cast<double>(n) * n;
  GramMatrix B{Matrix(n, n)};
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      B.m(u, v) = -0.5 * (D.m(u, v) - rowmean[u] - rowmean[v] + grand);
  return B;
}

namespace {

double frobenius(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

double off_diagonal_frobenius(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigen_sym(const GramMatrix& B, double tol) {
  if (!B.m.is_symmetric(1e-9 * std::max(1.0, frobenius(B.m))))
    throw InvariantError("eigen_sym expects a symmetric matrix");
  const int n = B.n();
  Matrix a = B.m;
  Matrix v = Matrix::identity(n);
  const double norm = frobenius(a);
  const double threshold = tol * std::max(norm, 1e-300);
  constexpr int kMaxSweeps = 100;

  int sweep = 0;
  while (off_diagonal_frobenius(a) > threshold) {
    if (++sweep > kMaxSweeps) throw ConvergenceError("jacobi sweep cap reached");
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });

  EigenDecomposition eig;
  eig.values.resize(n);
  eig.vectors = Matrix(n, n);
  for (int r = 0; r < n; ++r) {
    const int col = order[r];
    eig.values[r] = a(col, col);
    // column `col` of v is the eigenvector; store it as row r
    double sign = 1.0;
    for (int k = 0; k < n; ++k) {
      if (std::fabs(v(k, col)) > 1e-12) {
        sign = v(k, col) > 0.0 ? 1.0 : -1.0;
        break;
      }
    }
    for (int k = 0; k < n; ++k) eig.vectors(r, k) = sign * v(k, col);
  }
  return eig;
}

bool is_psd(const GramMatrix& B, double tol) {
  const EigenDecomposition eig = eigen_sym(B);
  return eig.values.empty() || eig.values.back() >= -tol;
}

Realization realize_from_gram(const GramMatrix& B, int K, double tol) {
  const EigenDecomposition eig = eigen_sym(B);
  const int n = B.n();
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    if (eig.values[i] < -tol) throw NotPsd("matrix has eigenvalue below -tol");
    if (eig.values[i] > tol) ++rank;
  }
  if (rank > K) throw RankExceedsK("matrix rank exceeds requested dimension");
  Realization x(n, K);
  for (int j = 0; j < rank; ++j) {
    const double root = std::sqrt(std::max(eig.values[j], 0.0));
    for (int u = 0; u < n; ++u) x.at(u, j) = eig.vectors(j, u) * root;
  }
  return x;
}

int numerical_rank(const Matrix& M, double tol_factor) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  // Singular values via the spectrum of the smaller Gram product.
  const bool tall = M.rows() >= M.cols();
  const int n = tall ? M.cols() : M.rows();
  GramMatrix G{Matrix(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      if (tall) {
        for (int k = 0; k < M.rows(); ++k) s += M(k, i) * M(k, j);
      } else {
        for (int k = 0; k < M.cols(); ++k) s += M(i, k) * M(j, k);
      }
      G.m(i, j) = s;
      G.m(j, i) = s;
    }
  }
  const EigenDecomposition eig = eigen_sym(G);
  const double lam_max = std::max(eig.values.front(), 0.0);
  if (lam_max == 0.0) return 0;
  // The Jacobi iteration stops at off-diagonal 1e-12 * |G|, so spectrum
  // entries below that are noise; without the floor the square root would
  // lift them above the singular value cutoff.
  const double lam_floor = 1e-11 * lam_max;
  const double smax = std::sqrt(lam_max);
  const double cut = tol_factor * smax * std::max(M.rows(), M.cols());
  int rank = 0;
  for (double lambda : eig.values) {
    const double sigma = lambda > lam_floor ? std::sqrt(lambda) : 0.0;
    if (sigma > cut) ++rank;
  }
  return rank;
}

std::uint64_t barvinok_bound(std::uint64_t m) {
  if (m == 0) throw InvariantError("barvinok_bound requires m >= 1");
  const std::uint64_t s8 = 8 * m + 1;  // desk scale, no overflow concern
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(s8)));
  while (r * r > s8) --r;
  while ((r + 1) * (r + 1) <= s8) ++r;
  return (r - 1) / 2;
}

double edmcp_residual(const GramMatrix& B, const DgpInstance& instance) {
  if (B.n() != instance.n)
    throw DimensionMismatch("edmcp_residual: matrix size and instance n differ");
  double worst = 0.0;
  for (const Edge& e : instance.edges) {
    if (!e.exact) throw IntervalEdgePresent("edmcp_residual requires exact edges");
    const double lhs = B.m(e.u, e.u) + B.m(e.v, e.v) - 2.0 * B.m(e.u, e.v);
    worst = std::max(worst, std::fabs(lhs - e.d() * e.d()));
  }
  return worst;
}

}  // namespace dg
