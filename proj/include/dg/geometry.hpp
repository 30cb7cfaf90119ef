#pragma once

#include <optional>
#include <vector>

namespace dg {

/// Intersection of K spheres in R^K around fixed centers. The linear part of
/// the system is factored once so that repeated radius queries are cheap.
class Trilaterator {
 public:
  /// `centers` holds K points of dimension K, row-major. Throws
  /// DegenerateCenters when the centers are affinely dependent relative to
  /// `degeneracy_tol` (scaled by the largest center spread).
  Trilaterator(const double* centers, int K, double degeneracy_tol = 1e-9);

  /// Writes up to two K-vectors into `out` (room for 2*K doubles) and returns
  /// how many. Candidates are exact on the difference equations; the residual
  /// against the first sphere must be within `tol`. The two intersection
  /// points collapse into one when they are closer than `merge_eps`.
  int solve(const double* radii, double tol, double* out, double merge_eps = 1e-7) const;

  int dim() const { return K_; }

 private:
  int K_;
  std::vector<double> c1_;        // first center
  std::vector<double> basis_;     // (K-1) orthonormal in-plane vectors, row-major
  std::vector<double> normal_;    // unit normal to the centers' affine hull
  std::vector<double> rref_;      // K-1 rows: center differences in basis coords
  std::vector<double> sq_norms_;  // |c_j|^2 for all centers
  std::vector<double> c1_coords_; // c1 in (basis, normal) coordinates
};

/// Unit normal of the affine hyperplane spanned by `count` points (row-major,
/// dimension `dim`, count == dim); nullopt when the points are affinely
/// dependent within tol.
std::optional<std::vector<double>> hyperplane_normal(const double* points, int dim,
                                                     double tol = 1e-9);

}  // namespace dg
