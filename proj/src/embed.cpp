#include "dg/embed.hpp"

#include <algorithm>
#include <cmath>

#include "dg/rng.hpp"

namespace dg {

void FiniteMetric::check_invariants(double tol) const {
  if (d.rows() != d.cols()) throw MetricViolation("metric matrix must be square");
  const int n = d.rows();
  for (int i = 0; i < n; ++i) {
    if (std::fabs(d(i, i)) > tol) throw MetricViolation("metric diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (i != j && !(d(i, j) > 0.0)) throw MetricViolation("off-diagonal distances must be positive");
      if (std::fabs(d(i, j) - d(j, i)) > tol) throw MetricViolation("metric must be symmetric");
    }
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (d(u, w) > d(u, v) + d(v, w) + tol)
          throw MetricViolation("triangle inequality violated");
}

DgpInstance partition_to_edgp1(const std::vector<long long>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 3) throw TooShort("partition reduction needs at least 3 values");
  for (long long v : a)
    if (v <= 0) throw InvariantError("partition values must be positive");
  DgpInstance inst;
  inst.n = n;
  inst.K = 1;
  inst.edges.push_back(Edge::exact_edge(0, n - 1, static_cast<double>(a[0])));
  for (int i = 1; i < n; ++i)
    inst.edges.push_back(Edge::exact_edge(i - 1, i, static_cast<double>(a[i])));
  return inst;
}

Realization realize_partition_yes(const std::vector<long long>& a,
                                  const std::vector<int>& witness) {
  const int n = static_cast<int>(a.size());
  std::vector<char> in_witness(n, 0);
  for (int i : witness) {
    if (i < 0 || i >= n) throw NotAWitness("witness index out of range");
    in_witness[i] = 1;
  }
  if (!in_witness[0]) throw NotAWitness("witness must contain index 0");
  long long sum_in = 0, sum_out = 0;
  for (int i = 0; i < n; ++i) (in_witness[i] ? sum_in : sum_out) += a[i];
  if (sum_in != sum_out) throw NotAWitness("witness does not split the sum evenly");

  std::vector<long long> pos(n, 0);
  for (int i = 1; i < n; ++i) pos[i] = pos[i - 1] + (in_witness[i] ? a[i] : -a[i]);
  Realization x(n, 1);
  for (int i = 0; i < n; ++i) x.at(i, 0) = static_cast<double>(pos[i]);
  return x;
}

std::vector<int> partition_from_realization(const std::vector<long long>& a,
                                            const Realization& x) {
  const int n = static_cast<int>(a.size());
  if (x.n != n || x.K != 1) throw InvalidRealization("realization shape mismatch");
  std::vector<long long> pos(n);
  for (int i = 0; i < n; ++i) {
    const double c = x.at(i, 0);
    pos[i] = std::llround(c);
    if (c != static_cast<double>(pos[i]))
      throw InvalidRealization("realization is not integral");
  }
  for (int i = 1; i < n; ++i)
    if (std::llabs(pos[i] - pos[i - 1]) != a[i])
      throw InvalidRealization("chain edge distance violated");
  if (std::llabs(pos[0] - pos[n - 1]) != a[0])
    throw InvalidRealization("closing edge distance violated");

  std::vector<int> witness;
  if (pos[0] - pos[n - 1] == a[0]) witness.push_back(0);
  for (int i = 1; i < n; ++i)
    if (pos[i] - pos[i - 1] == a[i]) witness.push_back(i);
  return witness;
}

Realization frechet_embed(const FiniteMetric& metric) {
  metric.check_invariants();
  const int n = metric.n();
  Realization x(n, n);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u) x.at(v, u) = metric.d(u, v);
  return x;
}

JllResult jll_project(const Realization& points, double epsilon, std::uint64_t seed, double c) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0))
    throw BadEpsilon("epsilon must lie strictly between 0 and 1");
  const int n = points.n;
  const int m = points.K;
  const int K = std::max(
      1, static_cast<int>(std::ceil(c * std::log(static_cast<double>(std::max(n, 1))) /
                                    (epsilon * epsilon))));

  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(K));
  std::vector<double> proj(static_cast<size_t>(K) * m);
  for (double& g : proj) g = rng.normal() * scale;

  JllResult result;
  result.points = Realization(n, K);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < K; ++k) {
      double s = 0.0;
      for (int j = 0; j < m; ++j) s += proj[static_cast<size_t>(k) * m + j] * points.at(i, j);
      result.points.at(i, k) = s;
    }

  DistortionReport& report = result.report;
  report.epsilon_target = epsilon;
  report.K_used = K;
  long long within = 0, total = 0;
  double lo = 1.0, hi = 1.0;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double before = point_distance(points, i, j);
      if (before == 0.0) continue;  // the bound is vacuous for coincident points
      const double after = point_distance(result.points, i, j);
      const double ratio = after / before;
      if (!any) {
        lo = hi = ratio;
        any = true;
      } else {
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
      ++total;
      if (ratio >= 1.0 - epsilon && ratio <= 1.0 + epsilon) ++within;
    }
  }
  report.fraction_within_bounds = total == 0 ? 1.0 : static_cast<double>(within) / total;
  report.worst_ratio_low = lo;
  report.worst_ratio_high = hi;
  return result;
}

}  // namespace dg
