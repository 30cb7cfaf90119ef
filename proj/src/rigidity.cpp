#include "dg/rigidity.hpp"

#include <algorithm>
#include <cmath>

#include "dg/linalg.hpp"
#include "dg/pebble.hpp"
#include "dg/rng.hpp"

namespace dg {

RigidityMatrix rigidity_matrix(const Framework& fw) {
  const DgpInstance& inst = fw.instance;
  const Realization& x = fw.realization;
  const int K = inst.K;
  RigidityMatrix R;
  R.m = Matrix(static_cast<int>(inst.edges.size()), K * inst.n);
  R.edge_index.reserve(inst.edges.size());
  for (size_t r = 0; r < inst.edges.size(); ++r) {
    const Edge& e = inst.edges[r];
    for (int k = 0; k < K; ++k) {
      const double diff = x.at(e.u, k) - x.at(e.v, k);
      R.m(static_cast<int>(r), K * e.u + k) = diff;
      R.m(static_cast<int>(r), K * e.v + k) = -diff;
    }
    R.edge_index.emplace_back(e.u, e.v);
  }
  return R;
}

namespace {

// Dimension of the rigid-motion orbit of n generic points in R^K: the full
// K(K+1)/2 once the points can span R^K, fewer when they cannot.
int rigid_motion_dim(int n, int K) {
  if (n >= K + 1) return K * (K + 1) / 2;
  return K * n - n * (n - 1) / 2;
}

int affine_hull_dim(const Realization& x, double tol_factor) {
  if (x.n <= 1) return 0;
  Matrix centered(x.n, x.K);
  std::vector<double> mean(x.K, 0.0);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.K; ++k) mean[k] += x.at(i, k);
  for (int k = 0; k < x.K; ++k) mean[k] /= x.n;
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.K; ++k) centered(i, k) = x.at(i, k) - mean[k];
  return numerical_rank(centered, tol_factor);
}

Realization random_realization(int n, int K, Rng rng) {
  Realization x(n, K);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < K; ++k) x.at(i, k) = rng.uniform01();
  return x;
}

RigidityMatrix rigidity_matrix_of(const Graph& g, const Realization& x) {
  DgpInstance inst;
  inst.n = g.n;
  inst.K = x.K;
  for (const auto& [u, v] : g.edges) inst.edges.push_back(Edge::exact_edge(u, v, 1.0));
  return rigidity_matrix(Framework(inst, x));
}

}  // namespace

RigidityVerdict infinitesimal_rigidity(const Framework& fw, double tol_factor) {
  const int n = fw.instance.n;
  const int K = fw.instance.K;
  const RigidityMatrix R = rigidity_matrix(fw);
  RigidityVerdict verdict;
  verdict.rank = numerical_rank(R.m, tol_factor);
  verdict.dof = K * n - verdict.rank;
  if (affine_hull_dim(fw.realization, tol_factor) < K) {
    verdict.status = RigidityStatus::DegenerateAffineHull;
  } else {
    verdict.status = (verdict.rank == K * n - K * (K + 1) / 2) ? RigidityStatus::Rigid
                                                               : RigidityStatus::Flexible;
  }
  return verdict;
}

RigidityVerdict generic_rigidity(const Graph& g, int K, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvariantError("generic_rigidity needs trials >= 1");
  const Rng base(seed);
  int best_rank = 0;
  for (int t = 0; t < trials; ++t) {
    const Realization x = random_realization(g.n, K, base.derive(t));
    best_rank = std::max(best_rank, numerical_rank(rigidity_matrix_of(g, x).m));
  }
  RigidityVerdict verdict;
  verdict.rank = best_rank;
  verdict.dof = K * g.n - best_rank;
  const int target = K * g.n - rigid_motion_dim(g.n, K);
  verdict.status =
      (best_rank == target) ? RigidityStatus::Rigid : RigidityStatus::Flexible;
  return verdict;
}

bool rigid_k1(const Graph& g) { return is_connected(g); }

bool maxwell_counts(const Graph& g, int K) {
  const int n = g.n;
  if (n > 26) throw TooLarge("subset enumeration capped at 26 vertices");
  const int bound_full = K * n - K * (K + 1) / 2;
  if (g.m() != bound_full) return false;
  std::vector<std::uint32_t> edge_bits;
  edge_bits.reserve(g.edges.size());
  for (const auto& [u, v] : g.edges)
    edge_bits.push_back((1u << u) | (1u << v));
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const int nv = __builtin_popcount(mask);
    if (nv < K) continue;
    int ne = 0;
    for (const std::uint32_t eb : edge_bits)
      if ((mask & eb) == eb) ++ne;
    if (ne > K * nv - K * (K + 1) / 2) return false;
  }
  return true;
}

bool laman_bruteforce(const Graph& g) {
  if (g.n <= 1) throw InvariantError("laman check needs |V| > 1");
  if (g.n > 16) throw TooLarge("laman brute force capped at 16 vertices");
  return maxwell_counts(g, 2);
}

PebbleGameResult pebble_game_2_3(const Graph& g) {
  if (g.n < 2) throw InvariantError("pebble game needs |V| >= 2");
  PebbleGame23 game(g.n);
  PebbleGameResult result;
  for (const auto& [u, v] : g.edges) {
    if (!game.insert_edge(u, v))
      ++result.redundant_edges;
  }
  result.independent_edges = game.independent_count();
  if (game.spanning_rigid())
    result.verdict = result.redundant_edges == 0 ? PebbleVerdict::MinimallyRigid
                                                 : PebbleVerdict::RigidWithRedundancy;
  else
    result.verdict = PebbleVerdict::Flexible;

  // Rigid clusters partition the edge set; report their vertex supports,
  // plus singletons for isolated vertices.
  std::vector<char> edge_done(g.edges.size(), 0);
  std::vector<char> covered(g.n, 0);
  for (size_t i = 0; i < g.edges.size(); ++i) {
    if (edge_done[i]) continue;
    const auto [a, b] = g.edges[i];
    std::vector<int> body = game.rigid_body_of(a, b);
    std::vector<char> in_body(g.n, 0);
    for (int w : body) {
      in_body[w] = 1;
      covered[w] = 1;
    }
    for (size_t j = i; j < g.edges.size(); ++j)
      if (!edge_done[j] && in_body[g.edges[j].first] && in_body[g.edges[j].second])
        edge_done[j] = 1;
    result.components.push_back(std::move(body));
  }
  for (int v = 0; v < g.n; ++v)
    if (!covered[v]) result.components.push_back({v});
  std::sort(result.components.begin(), result.components.end());
  return result;
}

bool redundantly_rigid(const Graph& g, int K, int trials, std::uint64_t seed) {
  const Rng base(seed);
  if (generic_rigidity(g, K, trials, base.derive(0).next_u64()).status !=
      RigidityStatus::Rigid)
    return false;
  for (size_t e = 0; e < g.edges.size(); ++e) {
    Graph h = g;
    h.edges.erase(h.edges.begin() + static_cast<std::ptrdiff_t>(e));
    if (generic_rigidity(h, K, trials, base.derive(e + 1).next_u64()).status !=
        RigidityStatus::Rigid)
      return false;
  }
  return true;
}

bool globally_rigid(const Graph& g, int K, int trials, std::uint64_t seed) {
  if (K != 1 && K != 2) throw UnsupportedDimension("global rigidity only for K in {1,2}");
  if (g.n < 1) throw InvariantError("empty graph");
  if (g.n == 1) return true;
  // complete graphs on <= K+1 vertices are globally rigid yet fail the
  // connectivity counts below
  if (g.n <= K + 1 && g.m() == g.n * (g.n - 1) / 2) return true;
  if (K == 1) return is_biconnected(g);
  return vertex_connectivity_at_least(g, 3) && redundantly_rigid(g, K, trials, seed);
}

}  // namespace dg
