#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dg/bp.hpp"
#include "dg/embed.hpp"
#include "test_helpers.hpp"

using namespace dg;
using namespace dgtest;

TEST_CASE("partition reduction builds the weighted cycle") {
  const DgpInstance inst = partition_to_edgp1({1, 2, 3});
  CHECK(inst.n == 3);
  CHECK(inst.K == 1);
  REQUIRE(inst.edges.size() == 3);
  CHECK(inst.edges[0].u == 0);
  CHECK(inst.edges[0].v == 2);
  CHECK(inst.edges[0].d() == 1.0);
  CHECK(inst.edges[1].d() == 2.0);
  CHECK(inst.edges[2].d() == 3.0);
  CHECK_THROWS_AS(partition_to_edgp1({1, 1}), TooShort);
}

TEST_CASE("partition YES construction") {
  SUBCASE("a=(1,2,3), witness {0,1}") {
    const Realization x = realize_partition_yes({1, 2, 3}, {0, 1});
    CHECK(x.at(0, 0) == 0.0);
    CHECK(x.at(1, 0) == 2.0);
    CHECK(x.at(2, 0) == -1.0);
    CHECK(validate(partition_to_edgp1({1, 2, 3}), x).max_abs_error == 0.0);
  }
  SUBCASE("a=(2,1,1), witness {0}") {
    const Realization x = realize_partition_yes({2, 1, 1}, {0});
    CHECK(x.at(1, 0) == -1.0);
    CHECK(x.at(2, 0) == -2.0);
    CHECK(validate(partition_to_edgp1({2, 1, 1}), x).max_abs_error == 0.0);
  }
  SUBCASE("unbalanced witness is rejected") {
    CHECK_THROWS_AS(realize_partition_yes({1, 2, 3}, {0}), NotAWitness);
  }
}

TEST_CASE("partition witness recovery") {
  SUBCASE("reads step directions") {
    const std::vector<int> witness =
        partition_from_realization({1, 2, 3}, make_realization(1, {{0.0}, {2.0}, {-1.0}}));
    long long sum = 0;
    for (int i : witness) sum += std::vector<long long>{1, 2, 3}[i];
    CHECK(sum == 3);
  }
  SUBCASE("rightward chain") {
    const std::vector<int> witness =
        partition_from_realization({2, 1, 1}, make_realization(1, {{0.0}, {1.0}, {2.0}}));
    CHECK(witness == std::vector<int>{1, 2});
  }
  SUBCASE("violations are rejected") {
    CHECK_THROWS_AS(
        partition_from_realization({1, 2, 3}, make_realization(1, {{0.0}, {2.0}, {0.0}})),
        InvalidRealization);
  }
}

TEST_CASE("partition round trip against brute force, via 1D branch-and-prune") {
  Rng rng(71);
  for (int trial = 0; trial < 60; ++trial) {
    Rng local = rng.derive(trial);
    const int n = 3 + static_cast<int>(local.below(5));
    std::vector<long long> a(n);
    for (auto& v : a) v = 1 + static_cast<long long>(local.below(9));

    // brute force over subsets containing index 0
    std::vector<int> witness;
    long long total = 0;
    for (long long v : a) total += v;
    bool yes = false;
    if (total % 2 == 0) {
      for (std::uint32_t mask = 1; mask < (1u << n) && !yes; mask += 2) {
        long long s = 0;
        for (int i = 0; i < n; ++i)
          if (mask & (1u << i)) s += a[i];
        if (2 * s == total) {
          yes = true;
          witness.clear();
          for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) witness.push_back(i);
        }
      }
    }

    const DgpInstance cycle = partition_to_edgp1(a);
    BpOptions options;
    options.max_solutions = 1;
    const bool bp_feasible = !bp_solve(cycle, options).solutions.empty();
    CHECK(bp_feasible == yes);
    if (yes) {
      const Realization x = realize_partition_yes(a, witness);
      CHECK(validate(cycle, x).max_abs_error == 0.0);
      const std::vector<int> recovered = partition_from_realization(a, x);
      long long s = 0;
      for (int i : recovered) s += a[i];
      CHECK(2 * s == total);
    }
  }
}

TEST_CASE("frechet embedding") {
  SUBCASE("two points") {
    Matrix d(2, 2);
    d(0, 1) = d(1, 0) = 5.0;
    const Realization x = frechet_embed(FiniteMetric{d});
    CHECK(x.at(0, 0) == 0.0);
    CHECK(x.at(0, 1) == 5.0);
    CHECK(x.at(1, 0) == 5.0);
    CHECK(x.at(1, 1) == 0.0);
  }
  SUBCASE("three-point metric, exact l_inf distances") {
    Matrix d(3, 3);
    d(0, 1) = d(1, 0) = 1.0;
    d(0, 2) = d(2, 0) = 2.0;
    d(1, 2) = d(2, 1) = 1.0;
    const Realization x = frechet_embed(FiniteMetric{d});
    const auto linf = [&](int u, int v) {
      double m = 0.0;
      for (int k = 0; k < x.K; ++k) m = std::max(m, std::fabs(x.at(u, k) - x.at(v, k)));
      return m;
    };
    CHECK(linf(0, 1) == 1.0);
    CHECK(linf(0, 2) == 2.0);
    CHECK(linf(1, 2) == 1.0);
  }
  SUBCASE("triangle violations are rejected") {
    Matrix d(3, 3);
    d(0, 1) = d(1, 0) = 1.0;
    d(0, 2) = d(2, 0) = 5.0;
    d(1, 2) = d(2, 1) = 1.0;
    CHECK_THROWS_AS(frechet_embed(FiniteMetric{d}), MetricViolation);
  }
}

TEST_CASE("frechet is an exact isometry on shortest path metrics") {
  Rng rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    Rng local = rng.derive(trial);
    const int n = 2 + static_cast<int>(local.below(19));
    // connected random weighted graph: a random spanning tree plus extras
    std::vector<std::vector<double>> w(n, std::vector<double>(n, 1e18));
    for (int i = 0; i < n; ++i) w[i][i] = 0.0;
    for (int v = 1; v < n; ++v) {
      const int u = static_cast<int>(local.below(v));
      const double weight = 0.1 + local.uniform01();
      w[u][v] = w[v][u] = std::min(w[u][v], weight);
    }
    for (int extra = 0; extra < n; ++extra) {
      const int u = static_cast<int>(local.below(n));
      const int v = static_cast<int>(local.below(n));
      if (u == v) continue;
      const double weight = 0.1 + local.uniform01();
      w[u][v] = w[v][u] = std::min(w[u][v], weight);
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) w[i][j] = std::min(w[i][j], w[i][k] + w[k][j]);
    Matrix d(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d(i, j) = w[i][j];
    const Realization x = frechet_embed(FiniteMetric{d});
    for (int u = 0; u < n; ++u) {
      for (int v = 0; v < n; ++v) {
        double m = 0.0;
        for (int k = 0; k < n; ++k) m = std::max(m, std::fabs(x.at(u, k) - x.at(v, k)));
        CHECK(std::fabs(m - d(u, v)) < 1e-12);
      }
    }
  }
}

TEST_CASE("jll projection") {
  SUBCASE("epsilon out of range") {
    CHECK_THROWS_AS(jll_project(make_realization(2, {{0.0, 0.0}, {1.0, 1.0}}), 1.0, 0),
                    BadEpsilon);
    CHECK_THROWS_AS(jll_project(make_realization(2, {{0.0, 0.0}, {1.0, 1.0}}), 0.0, 0),
                    BadEpsilon);
  }
  SUBCASE("identical points count as within bounds") {
    const auto r = jll_project(make_realization(3, {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}), 0.5, 7);
    CHECK(r.report.fraction_within_bounds == 1.0);
  }
  SUBCASE("projected dimension depends only on n and epsilon") {
    Rng rng(79);
    const auto narrow = jll_project(random_points(20, 5, rng.derive(0)), 0.4, 1);
    const auto wide = jll_project(random_points(20, 300, rng.derive(1)), 0.4, 2);
    CHECK(narrow.report.K_used == wide.report.K_used);
    CHECK(narrow.points.K == narrow.report.K_used);
  }
  SUBCASE("single pair lands within bounds most of the time") {
    int within = 0;
    for (int seed = 0; seed < 100; ++seed) {
      const auto r = jll_project(random_points(2, 40, Rng(900 + seed)), 0.5, seed);
      if (r.report.fraction_within_bounds == 1.0) ++within;
    }
    CHECK(within >= 90);
  }
}
