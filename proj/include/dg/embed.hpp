#pragma once

#include <cstdint>
#include <vector>

#include "dg/core.hpp"
#include "dg/matrix.hpp"

namespace dg {

/// Finite metric given by its full distance matrix.
struct FiniteMetric {
  Matrix d;

  int n() const { return d.rows(); }
  /// Symmetry, zero diagonal, positive off-diagonal, triangle inequality
  /// within tol; throws MetricViolation.
  void check_invariants(double tol = 1e-12) const;
};

struct DistortionReport {
  double epsilon_target = 0.0;
  int K_used = 0;
  double fraction_within_bounds = 1.0;
  double worst_ratio_low = 1.0;
  double worst_ratio_high = 1.0;
};

struct JllResult {
  Realization points;
  DistortionReport report;
};

/// Reduction from a Partition instance a (positive integers) to a weighted
/// cycle in dimension one: the closing edge {1,n} carries a_1, the chain edge
/// {i-1,i} carries a_i. Throws TooShort for |a| < 3.
DgpInstance partition_to_edgp1(const std::vector<long long>& a);

/// YES-certificate construction, exact integer arithmetic: x_1 = 0 and every
/// later point steps right for indices in the witness, left otherwise. The
/// witness is 0-based and must contain 0 and split the sum evenly
/// (NotAWitness).
Realization realize_partition_yes(const std::vector<long long>& a,
                                  const std::vector<int>& witness);

/// Reads a witness off an exact realization of the reduced cycle: indices
/// whose cycle step goes right. Throws InvalidRealization.
std::vector<int> partition_from_realization(const std::vector<long long>& a,
                                            const Realization& x);

/// x_v = (d_uv | u in V): an exact isometry into (R^n, l_inf).
Realization frechet_embed(const FiniteMetric& metric);

/// Gaussian random projection to K = ceil(c * ln n / eps^2) dimensions with
/// the 1/sqrt(K) scaling, plus the observed distortion of all pairs.
/// Zero-distance pairs are excluded from the ratios. Throws BadEpsilon.
JllResult jll_project(const Realization& points, double epsilon, std::uint64_t seed,
                      double c = 4.0);

}  // namespace dg
