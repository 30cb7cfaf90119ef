#pragma once

#include <cstdint>
#include <vector>

#include "dg/core.hpp"
#include "dg/matrix.hpp"

namespace dg {

/// Matrix of squared pairwise Euclidean distances.
struct SquaredEdm {
  Matrix m;

  int n() const { return m.rows(); }
  /// Throws InvariantError unless symmetric with zero diagonal and
  /// nonnegative entries.
  void check_invariants(double tol = 1e-12) const;
};

/// Symmetric matrix B; it is the Gram matrix of some realization exactly
/// when it is positive semidefinite.
struct GramMatrix {
  Matrix m;

  int n() const { return m.rows(); }
};

/// Eigenvalues sorted descending; row i of `vectors` is the unit eigenvector
/// belonging to values[i], so m = vectors^T * diag(values) * vectors.
struct EigenDecomposition {
  std::vector<double> values;
  Matrix vectors;
};

/// D(u,v) = squared distance between rows u and v of x.
SquaredEdm sqedm_from_realization(const Realization& x);

/// B = -1/2 J D J with the centering matrix J = I - (1/n) 1 1^T. Row sums of
/// the result vanish.
GramMatrix gram_from_sqedm(const SquaredEdm& D);

/// Cyclic Jacobi eigensolver for symmetric matrices. `tol` is the relative
/// off-diagonal Frobenius threshold; throws ConvergenceError after the sweep
/// cap. The first nonzero entry of each eigenvector is made positive.
EigenDecomposition eigen_sym(const GramMatrix& B, double tol = 1e-12);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const GramMatrix& B, double tol = kDefaultTol);

/// Factors a PSD matrix as x x^T with x of width K, columns ordered by
/// descending eigenvalue and zero-padded past the rank. Throws NotPsd or
/// RankExceedsK.
Realization realize_from_gram(const GramMatrix& B, int K, double tol = kDefaultTol);

/// Count of singular values above tol_factor * sigma_max * max(rows, cols).
int numerical_rank(const Matrix& M, double tol_factor = 1e-10);

/// Largest K with K(K+1)/2 <= m, i.e. floor((sqrt(8m+1)-1)/2), in integer
/// arithmetic.
std::uint64_t barvinok_bound(std::uint64_t m);

/// Max over exact edges of |B_uu + B_vv - 2 B_uv - d_uv^2|.
double edmcp_residual(const GramMatrix& B, const DgpInstance& instance);

}  // namespace dg
