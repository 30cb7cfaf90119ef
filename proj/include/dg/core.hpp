#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dg/errors.hpp"

namespace dg {

/// Default tolerance for distance equality tests.
inline constexpr double kDefaultTol = 1e-8;

/// Weighted edge. Vertices are 0-based inside the library; the JSON layer
/// shifts to 1-based labels. An exact edge stores d in both bounds.
struct Edge {
  int u = 0;
  int v = 0;
  double dl = 0.0;
  double du = 0.0;
  bool exact = true;

  double d() const { return dl; }

  static Edge exact_edge(int u, int v, double d) { return Edge{u, v, d, d, true}; }
  static Edge interval_edge(int u, int v, double dl, double du) {
    return Edge{u, v, dl, du, false};
  }
};

/// Problem input: a simple edge-weighted graph plus the target dimension K.
struct DgpInstance {
  int n = 0;
  int K = 0;
  std::vector<Edge> edges;

  bool has_interval_edges() const;
  /// Throws InvariantError when any structural invariant is violated
  /// (self loop, duplicate pair, weight out of range, bad vertex id).
  void check_invariants() const;
};

/// Candidate solution: one K-vector per vertex, stored row-major.
struct Realization {
  int n = 0;
  int K = 0;
  std::vector<double> coords;  // n*K entries

  Realization() = default;
  Realization(int n_, int K_) : n(n_), K(K_), coords(static_cast<size_t>(n_) * K_, 0.0) {}

  double& at(int i, int k) { return coords[static_cast<size_t>(i) * K + k]; }
  double at(int i, int k) const { return coords[static_cast<size_t>(i) * K + k]; }
  const double* row(int i) const { return coords.data() + static_cast<size_t>(i) * K; }
  double* row(int i) { return coords.data() + static_cast<size_t>(i) * K; }
};

/// A graph paired with a realization of it.
struct Framework {
  DgpInstance instance;
  Realization realization;

  Framework(DgpInstance inst, Realization x);
};

struct EdgeViolation {
  int u = 0;
  int v = 0;
  double realized_distance = 0.0;
};

struct ValidationReport {
  double max_abs_error = 0.0;
  double mean_sq_error = 0.0;
  std::vector<EdgeViolation> violated_edges;
};

/// Euclidean distance between rows u and v of x.
double point_distance(const Realization& x, int u, int v);

/// Per-edge error of x against the instance. For an exact edge the error is
/// |dist - d|; for an interval edge it is the distance to [dl, du]. Edges with
/// error > tol are reported as violated.
ValidationReport validate(const DgpInstance& instance, const Realization& x,
                          double tol = kDefaultTol);

/// True when x and y have equal pairwise distance matrices within tol. With
/// allow_reflection false the orientations of a common full-dimensional local
/// frame must agree as well.
bool congruent(const Realization& x, const Realization& y, double tol = kDefaultTol,
               bool allow_reflection = true);

/// Edge density 2|E| / (n(n-1)); 0 when n < 2.
double eta(const DgpInstance& instance);

}  // namespace dg
