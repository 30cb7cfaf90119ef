#include <doctest.h>

#include "dg/core.hpp"
#include "dg/io.hpp"
#include "dg/rng.hpp"
#include "test_helpers.hpp"

using namespace dg;
using namespace dgtest;

TEST_CASE("validate: exact edges") {
  const DgpInstance inst = make_instance(2, 1, {{0, 1, 1.0}});
  SUBCASE("satisfied") {
    const auto report = validate(inst, make_realization(1, {{0.0}, {1.0}}));
    CHECK(report.max_abs_error == 0.0);
    CHECK(report.violated_edges.empty());
  }
  SUBCASE("violated by 0.5") {
    const auto report = validate(inst, make_realization(1, {{0.0}, {1.5}}));
    CHECK(report.max_abs_error == doctest::Approx(0.5));
    REQUIRE(report.violated_edges.size() == 1);
    CHECK(report.violated_edges[0].u == 0);
    CHECK(report.violated_edges[0].v == 1);
    CHECK(report.violated_edges[0].realized_distance == doctest::Approx(1.5));
    CHECK(report.mean_sq_error == doctest::Approx(0.25));
  }
}

TEST_CASE("validate: interval edge membership") {
  DgpInstance inst;
  inst.n = 2;
  inst.K = 2;
  inst.edges.push_back(Edge::interval_edge(0, 1, 1.0, 2.0));
  const auto report = validate(inst, make_realization(2, {{0.0, 0.0}, {1.5, 0.0}}));
  CHECK(report.max_abs_error == 0.0);
  const auto low = validate(inst, make_realization(2, {{0.0, 0.0}, {0.5, 0.0}}));
  CHECK(low.max_abs_error == doctest::Approx(0.5));
}

TEST_CASE("validate: dimension mismatch") {
  const DgpInstance inst = make_instance(2, 1, {{0, 1, 1.0}});
  CHECK_THROWS_AS(validate(inst, make_realization(2, {{0.0, 0.0}, {1.0, 0.0}})),
                  DimensionMismatch);
}

TEST_CASE("congruent: translations preserve distances") {
  const Realization x = make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  Realization y = x;
  for (int i = 0; i < y.n; ++i) {
    y.at(i, 0) += 5.0;
    y.at(i, 1) += 5.0;
  }
  CHECK(congruent(x, y));
  CHECK(congruent(x, y, 1e-8, false));
}

TEST_CASE("congruent: distance mismatch detected") {
  const Realization x = make_realization(1, {{0.0}, {1.0}, {3.0}});
  const Realization y = make_realization(1, {{0.0}, {1.0}, {2.0}});
  CHECK_FALSE(congruent(x, y));
}

TEST_CASE("congruent: mirror needs the reflection flag") {
  const Realization x = make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}});
  const Realization y = make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {0.0, -1.0}});
  CHECK(congruent(x, y, 1e-8, true));
  CHECK_FALSE(congruent(x, y, 1e-8, false));
  // one dimension has an orientation too
  const Realization a = make_realization(1, {{0.0}, {1.0}, {3.0}});
  const Realization b = make_realization(1, {{0.0}, {-1.0}, {-3.0}});
  CHECK(congruent(a, b, 1e-8, true));
  CHECK_FALSE(congruent(a, b, 1e-8, false));
}

TEST_CASE("congruent: invariant under random proper rigid motions") {
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int K = 1 + static_cast<int>(rng.below(4));
    const int n = 2 + static_cast<int>(rng.below(8));
    const Realization x = random_points(n, K, rng.derive(trial));
    Rng local = rng.derive(1000 + trial);
    const auto rot = random_rotation(K, local);
    std::vector<double> shift(K);
    for (double& s : shift) s = local.uniform(-3.0, 3.0);
    const Realization y = transform(x, rot, shift);
    CHECK(congruent(x, y, 1e-8, true));
    CHECK(congruent(x, y, 1e-8, false));
    CHECK(congruent(y, x, 1e-8, false));  // symmetry
    CHECK(congruent(x, x, 1e-8, false));  // reflexivity
  }
}

TEST_CASE("eta density") {
  CHECK(eta(make_instance(3, 2, {{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}})) == 1.0);
  CHECK(eta(make_instance(3, 2, {{0, 1, 1.0}, {1, 2, 1.0}})) == doctest::Approx(2.0 / 3.0));
  CHECK(eta(make_instance(3, 2, {})) == 0.0);
}

TEST_CASE("closed loop: instances built from realizations validate exactly") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int K = 1 + static_cast<int>(rng.below(3));
    const int n = K + 2 + static_cast<int>(rng.below(5));
    const Realization x = random_points(n, K, rng.derive(trial));
    const DgpInstance inst = dmdgp_from_realization(x);
    CHECK(validate(inst, x).max_abs_error < 1e-12);
  }
}
