#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dg/udgp.hpp"
#include "test_helpers.hpp"

using namespace dg;
using namespace dgtest;

namespace {

DistanceList list_of(int n, int K, std::vector<double> values) {
  DistanceList list;
  list.n = n;
  list.K = K;
  list.values = std::move(values);
  return list;
}

DistanceList complete_list(const Realization& x) {
  DistanceList list;
  list.n = x.n;
  list.K = x.K;
  for (int a = 0; a < x.n; ++a)
    for (int b = a + 1; b < x.n; ++b) list.values.push_back(point_distance(x, a, b));
  return list;
}

// congruence up to relabeling: some vertex permutation matches all pairwise
// distances within tol
bool same_point_set(const Realization& x, const Realization& y, double tol) {
  REQUIRE(x.n == y.n);
  std::vector<int> perm(x.n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int a = 0; a < x.n && ok; ++a)
      for (int b = a + 1; b < x.n && ok; ++b)
        ok = std::fabs(point_distance(x, a, b) - point_distance(y, perm[a], perm[b])) <= tol;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace

TEST_CASE("tribond on the line") {
  SUBCASE("three points at {0,1,3}") {
    const auto result = tribond(list_of(3, 1, {1.0, 2.0, 3.0}));
    REQUIRE(result.feasible);
    CHECK(same_point_set(result.realization, make_realization(1, {{0.0}, {1.0}, {3.0}}), 1e-9));
  }
  SUBCASE("{1,1,5} cannot be realized") {
    const auto result = tribond(list_of(3, 1, {1.0, 1.0, 5.0}));
    CHECK_FALSE(result.feasible);
    CHECK_FALSE(result.timed_out);
  }
}

TEST_CASE("tribond recovers the unit square") {
  const double r2 = std::sqrt(2.0);
  const auto result = tribond(list_of(4, 2, {1.0, 1.0, 1.0, 1.0, r2, r2}));
  REQUIRE(result.feasible);
  const Realization square =
      make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
  CHECK(same_point_set(result.realization, square, 1e-9));
}

TEST_CASE("tribond cardinality and invariant guards") {
  CHECK_THROWS_AS(tribond(list_of(3, 1, {1.0, 2.0})), BadCardinality);
  CHECK_THROWS_AS(tribond(list_of(3, 1, {1.0, -2.0, 3.0})), InvariantError);
}

TEST_CASE("tribond reports timeouts") {
  // values that admit no realization force a full exhaustive search; an
  // absurdly small budget must trip the deadline instead
  Rng rng(97);
  DistanceList list;
  list.n = 7;
  list.K = 3;
  for (int i = 0; i < 21; ++i) list.values.push_back(0.5 + rng.uniform01());
  const auto result = tribond(list, 1e-9, 1e-4);
  CHECK_FALSE(result.feasible);
  CHECK(result.timed_out);
}

TEST_CASE("tribond recovers random exact point sets") {
  Rng rng(61);
  for (int trial = 0; trial < 24; ++trial) {
    Rng local = rng.derive(trial);
    const int K = 1 + static_cast<int>(local.below(3));
    const int n = K + 2 + static_cast<int>(local.below(std::uint64_t(6 - K - 1)));
    const Realization x = random_points(n, K, local.derive(9));
    const auto result = tribond(complete_list(x), 1e-6);
    REQUIRE(result.feasible);
    CHECK(same_point_set(result.realization, x, 1e-5));
    // the success contract: matched multiset within tolerance, so the best
    // assignment cost stays below m * tol^2
    const auto [assignment, cost] = best_assignment(result.realization, complete_list(x));
    CHECK(cost < complete_list(x).m() * 1e-6 * 1e-6);  // tol^2 * m
  }
}

TEST_CASE("udgp cost") {
  const Realization x = make_realization(1, {{0.0}, {1.0}});
  SUBCASE("exact fit costs nothing") {
    Assignment a;
    a.pairs = {{0, 1}};
    CHECK(udgp_cost(x, list_of(2, 1, {1.0}), a) == 0.0);
  }
  SUBCASE("single residual squared") {
    Assignment a;
    a.pairs = {{0, 1}};
    CHECK(udgp_cost(x, list_of(2, 1, {2.0}), a) == doctest::Approx(1.0));
  }
  SUBCASE("swapping equal values changes nothing") {
    const Realization y = make_realization(1, {{0.0}, {1.0}, {2.0}});
    Assignment a;
    a.pairs = {{0, 1}, {1, 2}, {0, 2}};
    Assignment b;
    b.pairs = {{1, 2}, {0, 1}, {0, 2}};
    const DistanceList list = list_of(3, 1, {1.0, 1.0, 2.0});
    CHECK(udgp_cost(y, list, a) == udgp_cost(y, list, b));
  }
  SUBCASE("errors") {
    Assignment missing;
    CHECK_THROWS_AS(udgp_cost(x, list_of(2, 1, {1.0}), missing), IncompleteAssignment);
    Assignment repeated;
    repeated.pairs = {{0, 1}, {1, 0}};
    CHECK_THROWS_AS(udgp_cost(x, list_of(2, 1, {1.0, 1.0}), repeated), IncompleteAssignment);
  }
}

TEST_CASE("best assignment") {
  SUBCASE("unit square list fits at zero cost") {
    const double r2 = std::sqrt(2.0);
    const Realization square =
        make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    const auto [a, cost] = best_assignment(square, list_of(4, 2, {1.0, 1.0, 1.0, 1.0, r2, r2}));
    CHECK(cost == doctest::Approx(0.0));
    CHECK(udgp_cost(square, list_of(4, 2, {1.0, 1.0, 1.0, 1.0, r2, r2}), a) ==
          doctest::Approx(0.0));
  }
  SUBCASE("line points match sorted values") {
    const Realization x = make_realization(1, {{0.0}, {1.0}, {3.0}});
    const auto [a, cost] = best_assignment(x, list_of(3, 1, {1.0, 2.0, 3.0}));
    CHECK(cost == doctest::Approx(0.0));
    CHECK(a.pairs[0] == std::pair<int, int>{0, 1});
    CHECK(a.pairs[1] == std::pair<int, int>{1, 2});
    CHECK(a.pairs[2] == std::pair<int, int>{0, 2});
  }
  SUBCASE("single pair residual") {
    const auto [a, cost] =
        best_assignment(make_realization(1, {{0.0}, {1.0}}), list_of(2, 1, {1.1}));
    CHECK(cost == doctest::Approx(0.01));
  }
  SUBCASE("partial lists go through the matching") {
    const Realization x = make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 2.0}});
    const auto [a, cost] = best_assignment(x, list_of(3, 2, {2.0, 1.0}));
    CHECK(cost == doctest::Approx(0.0));
    CHECK(a.pairs[0] == std::pair<int, int>{0, 2});
    CHECK(a.pairs[1] == std::pair<int, int>{0, 1});
  }
  SUBCASE("replacing values by realized distances never hurts") {
    Rng rng(67);
    const Realization x = random_points(5, 2, rng);
    DistanceList list = complete_list(x);
    // perturb by less than half the smallest gap so the sorted order stays
    // aligned with the true distances (crossings can break monotonicity)
    std::vector<double> sorted = list.values;
    std::sort(sorted.begin(), sorted.end());
    double min_gap = 1e9;
    for (size_t i = 1; i < sorted.size(); ++i)
      min_gap = std::min(min_gap, sorted[i] - sorted[i - 1]);
    DistanceList noisy = list;
    Rng local = rng.derive(3);
    for (double& v : noisy.values)
      v = std::max(1e-6, v + local.uniform(-0.4, 0.4) * min_gap);
    double prev = best_assignment(x, noisy).second;
    for (size_t i = 0; i < list.values.size(); ++i) {
      noisy.values[i] = list.values[i];
      const double cur = best_assignment(x, noisy).second;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
    CHECK(prev == doctest::Approx(0.0));
  }
}
