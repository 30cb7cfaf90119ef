#include <doctest.h>

#include <cmath>

#include "dg/bp.hpp"
#include "test_helpers.hpp"

using namespace dg;
using namespace dgtest;

namespace {

const double kRoot2 = std::sqrt(2.0);

// weights of the unit square (0,0),(1,0),(1,1),(0,1) under the natural order
DgpInstance square_instance(bool with_pruning, double pruning_weight = 1.0) {
  DgpInstance inst = make_instance(
      4, 2, {{0, 1, 1.0}, {0, 2, kRoot2}, {1, 2, 1.0}, {1, 3, kRoot2}, {2, 3, 1.0}});
  if (with_pruning) inst.edges.push_back(Edge::exact_edge(0, 3, pruning_weight));
  return inst;
}

}  // namespace

TEST_CASE("classify_order") {
  SUBCASE("square instance is a DMDGP") {
    const auto order = classify_order(square_instance(false));
    CHECK(order.kind == OrderKind::DMDGP);
    CHECK(order.pruning_edges.empty());
    CHECK(order.reference_predecessors[3] == std::vector<int>{1, 2});
  }
  SUBCASE("extra edge becomes a pruning edge") {
    const auto order = classify_order(square_instance(true));
    CHECK(order.kind == OrderKind::DMDGP);
    REQUIRE(order.pruning_edges.size() == 1);
    CHECK(order.pruning_edges[0].u == 0);
    CHECK(order.pruning_edges[0].v == 3);
  }
  SUBCASE("non-immediate references give a DDGP") {
    const DgpInstance inst = make_instance(
        4, 2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {0, 3, 1.0}, {1, 3, 1.0}});
    const auto order = classify_order(inst);
    CHECK(order.kind == OrderKind::DDGP);
    CHECK(order.reference_predecessors[3] == std::vector<int>{0, 1});
  }
  SUBCASE("missing predecessors are not discretizable") {
    const DgpInstance inst = make_instance(4, 2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}});
    CHECK(classify_order(inst).kind == OrderKind::NotDiscretizable);
  }
  SUBCASE("interval edges cannot discretize") {
    DgpInstance inst = square_instance(false);
    for (Edge& e : inst.edges)
      if (e.u == 1 && e.v == 3) e = Edge::interval_edge(1, 3, kRoot2, kRoot2 + 0.1);
    CHECK(classify_order(inst).kind == OrderKind::NotDiscretizable);
  }
}

TEST_CASE("sphere intersection") {
  SUBCASE("two circles, two points") {
    const auto pts = sphere_intersect({{0.0, 0.0}, {2.0, 0.0}}, {kRoot2, kRoot2});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0][0] == doctest::Approx(1.0));
    CHECK(pts[0][1] == doctest::Approx(-1.0));
    CHECK(pts[1][0] == doctest::Approx(1.0));
    CHECK(pts[1][1] == doctest::Approx(1.0));
  }
  SUBCASE("tangency yields one point") {
    const auto pts = sphere_intersect({{0.0, 0.0}, {2.0, 0.0}}, {1.0, 1.0});
    REQUIRE(pts.size() == 1);
    CHECK(pts[0][0] == doctest::Approx(1.0));
    CHECK(pts[0][1] == doctest::Approx(0.0));
  }
  SUBCASE("disjoint spheres") {
    CHECK(sphere_intersect({{0.0, 0.0}, {2.0, 0.0}}, {0.5, 0.5}).empty());
  }
  SUBCASE("degenerate centers") {
    CHECK_THROWS_AS(sphere_intersect({{0.0, 0.0}, {0.0, 0.0}}, {1.0, 1.0}), DegenerateCenters);
  }
  SUBCASE("one sphere on the line") {
    const auto pts = sphere_intersect({{3.0}}, {2.0});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0][0] == doctest::Approx(1.0));
    CHECK(pts[1][0] == doctest::Approx(5.0));
  }
}

TEST_CASE("bp_solve on the square family") {
  SUBCASE("no pruning: two incongruent solutions") {
    const SolutionSet set = bp_solve(square_instance(false));
    CHECK(set.solutions.size() == 2);
    CHECK(set.level_counts == std::vector<std::int64_t>{1, 1, 1, 2});
    for (const auto& sol : set.solutions)
      CHECK(validate(square_instance(false), sol).max_abs_error < 1e-8);
  }
  SUBCASE("pruning edge pins the square") {
    const SolutionSet set = bp_solve(square_instance(true));
    REQUIRE(set.solutions.size() == 1);
    const Realization square =
        make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    CHECK(congruent(set.solutions[0], square, 1e-6, true));
  }
  SUBCASE("infeasible pruning edge") {
    const SolutionSet set = bp_solve(square_instance(true, 10.0));
    CHECK(set.solutions.empty());
    CHECK(set.pruned_count > 0);
  }
  SUBCASE("free reflection doubles the tree") {
    BpOptions options;
    options.fix_reflection = false;
    const SolutionSet set = bp_solve(square_instance(false), options);
    CHECK(set.solutions.size() == 4);
    CHECK(set.level_counts == std::vector<std::int64_t>{1, 1, 2, 4});
  }
  SUBCASE("max_solutions stops early") {
    BpOptions options;
    options.max_solutions = 1;
    const SolutionSet set = bp_solve(square_instance(false), options);
    CHECK(set.solutions.size() == 1);
    CHECK(set.stopped_early);
  }
}

TEST_CASE("bp_solve with interval pruning edges") {
  // the two leaves of the square family realize d(0,3) = 1 and sqrt(5)
  DgpInstance inst = square_instance(false);
  SUBCASE("interval keeps the compatible branch") {
    inst.edges.push_back(Edge::interval_edge(0, 3, 0.9, 1.1));
    const SolutionSet set = bp_solve(inst);
    REQUIRE(set.solutions.size() == 1);
    const Realization square =
        make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}});
    CHECK(congruent(set.solutions[0], square, 1e-6, true));
  }
  SUBCASE("interval selecting the far branch") {
    inst.edges.push_back(Edge::interval_edge(0, 3, 2.0, 3.0));
    const SolutionSet set = bp_solve(inst);
    REQUIRE(set.solutions.size() == 1);
    CHECK(point_distance(set.solutions[0], 0, 3) == doctest::Approx(std::sqrt(5.0)));
  }
  SUBCASE("empty interval window prunes everything") {
    inst.edges.push_back(Edge::interval_edge(0, 3, 1.5, 1.8));
    CHECK(bp_solve(inst).solutions.empty());
  }
}

TEST_CASE("bp_solve on a DDGP instance") {
  Rng rng(59);
  Realization x = random_points(4, 2, rng);
  DgpInstance inst;
  inst.n = 4;
  inst.K = 2;
  for (const auto& [u, v] : {std::pair{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}})
    inst.edges.push_back(Edge::exact_edge(u, v, point_distance(x, u, v)));
  REQUIRE(classify_order(inst).kind == OrderKind::DDGP);
  const SolutionSet set = bp_solve(inst);
  CHECK(set.solutions.size() == 2);
  for (const auto& sol : set.solutions) CHECK(validate(inst, sol).max_abs_error < 1e-8);
}

TEST_CASE("bp_solve errors") {
  CHECK_THROWS_AS(
      bp_solve(make_instance(4, 2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}})),
      NotDiscretizable);
  // initial clique violating the triangle inequality
  CHECK_THROWS_AS(bp_solve(make_instance(3, 2, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 5.0}})),
                  InfeasibleInitialClique);
}

TEST_CASE("bp level counts on random DMDGP instances") {
  Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    Rng local = rng.derive(trial);
    const int K = 2 + static_cast<int>(local.below(2));
    const int n = K + 2 + static_cast<int>(local.below(8 - K));
    const Realization x = random_points(n, K, local.derive(1));
    const SolutionSet set = bp_solve(dmdgp_from_realization(x), BpOptions{1e-7, 0, true, 0, 1});
    CHECK(set.solutions.size() == (1ull << (n - K - 1)));
    for (int level = 0; level < n; ++level) {
      const std::int64_t expected = level <= K ? 1 : (1ll << (level - K));
      CHECK(set.level_counts[level] == expected);
    }
    // closed loop with validate, and the generator is among the solutions
    bool found = false;
    for (const auto& sol : set.solutions) {
      CHECK(validate(dmdgp_from_realization(x), sol, 1e-7).max_abs_error < 1e-7);
      found = found || congruent(sol, x, 1e-6, true);
    }
    CHECK(found);
  }
}

TEST_CASE("parallel bp matches sequential output") {
  Rng rng(43);
  const Realization x = random_points(9, 2, rng);
  const DgpInstance inst = dmdgp_from_realization(x, {{1, 7}});
  const SolutionSet a = bp_solve(inst);
  BpOptions options;
  options.jobs = 4;
  const SolutionSet b = bp_solve(inst, options);
  CHECK(a.level_counts == b.level_counts);
  CHECK(a.pruned_count == b.pruned_count);
  REQUIRE(a.solutions.size() == b.solutions.size());
  for (size_t i = 0; i < a.solutions.size(); ++i)
    CHECK(congruent(a.solutions[i], b.solutions[i], 1e-9, false));
}

TEST_CASE("pruning group generators") {
  SUBCASE("no pruning edges: every level past K generates") {
    DiscretizationOrder order;
    order.kind = OrderKind::DMDGP;
    const PruningGroup g = pruning_group(order, 5, 3);
    CHECK(g.generator_levels == std::vector<int>{3, 4});
    CHECK(g.order == 4);
  }
  SUBCASE("long pruning edge removes covered levels") {
    DiscretizationOrder order;
    order.kind = OrderKind::DMDGP;
    order.pruning_edges.push_back(Edge::exact_edge(0, 4, 1.0));
    const PruningGroup g = pruning_group(order, 5, 3);
    CHECK(g.generator_levels == std::vector<int>{3});
    CHECK(g.order == 2);
  }
  SUBCASE("square pruning edge") {
    DiscretizationOrder order;
    order.kind = OrderKind::DMDGP;
    order.pruning_edges.push_back(Edge::exact_edge(0, 3, 1.0));
    const PruningGroup g = pruning_group(order, 4, 2);
    CHECK(g.generator_levels == std::vector<int>{2});
    CHECK(g.order == 2);
  }
  SUBCASE("DDGP orders are refused") {
    DiscretizationOrder order;
    order.kind = OrderKind::DDGP;
    CHECK_THROWS_AS(pruning_group(order, 4, 2), NotDmdgp);
  }
}

TEST_CASE("partial reflection") {
  SUBCASE("reflection through a point on the line") {
    const Realization x = make_realization(1, {{0.0}, {1.0}, {3.0}});
    const Realization y = partial_reflection(x, 1, 1);
    CHECK(y.at(0, 0) == 0.0);
    CHECK(y.at(1, 0) == doctest::Approx(-1.0));
    CHECK(y.at(2, 0) == doctest::Approx(-3.0));
  }
  SUBCASE("reflection across the line through the first two points") {
    const Realization x = make_realization(2, {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}});
    const Realization y = partial_reflection(x, 2, 2);
    CHECK(y.at(2, 0) == doctest::Approx(1.0));
    CHECK(y.at(2, 1) == doctest::Approx(-1.0));
    CHECK(y.at(1, 1) == 0.0);
  }
  SUBCASE("involution") {
    Rng rng(47);
    const Realization x = random_points(6, 3, rng);
    for (int level = 3; level < 6; ++level) {
      const Realization twice = partial_reflection(partial_reflection(x, level, 3), level, 3);
      for (int i = 0; i < x.n; ++i)
        for (int k = 0; k < x.K; ++k)
          CHECK(twice.at(i, k) == doctest::Approx(x.at(i, k)).epsilon(1e-10));
    }
  }
  SUBCASE("degenerate hyperplane") {
    const Realization x = make_realization(2, {{0.0, 0.0}, {0.0, 0.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(partial_reflection(x, 2, 2), DegenerateHyperplane);
  }
}

TEST_CASE("orbit generation reproduces the bp solution set") {
  SUBCASE("trivial group") {
    const Realization x = make_realization(1, {{0.0}, {1.0}});
    PruningGroup group;
    const SolutionSet set = orbit_generate(x, group, make_instance(2, 1, {{0, 1, 1.0}}));
    REQUIRE(set.solutions.size() == 1);
  }
  SUBCASE("square without pruning") {
    const DgpInstance inst = square_instance(false);
    const SolutionSet bp = bp_solve(inst);
    const PruningGroup group = pruning_group(classify_order(inst), 4, 2);
    const SolutionSet orbit = orbit_generate(bp.solutions[0], group, inst, 1e-6, true);
    REQUIRE(orbit.solutions.size() == bp.solutions.size());
    for (const auto& a : orbit.solutions) {
      bool matched = false;
      for (const auto& b : bp.solutions) matched = matched || congruent(a, b, 1e-6, true);
      CHECK(matched);
    }
  }
  SUBCASE("pruning edge {0,n-1} leaves a mirror pair") {
    Rng rng(53);
    const Realization x = random_points(5, 3, rng);
    const DgpInstance inst = dmdgp_from_realization(x, {{0, 4}});
    const PruningGroup group = pruning_group(classify_order(inst), 5, 3);
    CHECK(group.order == 2);
    const SolutionSet raw = orbit_generate(x, group, inst, 1e-6, false);
    CHECK(raw.solutions.size() == 2);
    const SolutionSet folded = orbit_generate(x, group, inst, 1e-6, true);
    CHECK(folded.solutions.size() == 1);
  }
  SUBCASE("invalid seed is rejected") {
    PruningGroup group;
    CHECK_THROWS_AS(orbit_generate(make_realization(1, {{0.0}, {5.0}}), group,
                                   make_instance(2, 1, {{0, 1, 1.0}})),
                    InvalidSeedSolution);
  }
}

TEST_CASE("predicted solution count") {
  const DgpInstance square = square_instance(false);
  CHECK(predicted_solution_count(classify_order(square), 4, 2) == 2);
  const DgpInstance pruned = square_instance(true);
  CHECK(predicted_solution_count(classify_order(pruned), 4, 2) == 1);
  DgpInstance interval = square_instance(false);
  interval.edges.push_back(Edge::interval_edge(0, 3, 1.0, 1.1));
  CHECK(!predicted_solution_count(classify_order(interval), 4, 2).has_value());
}
