#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dg/bp.hpp"
#include "dg/core.hpp"
#include "dg/embed.hpp"
#include "dg/graph.hpp"
#include "dg/io.hpp"
#include "dg/linalg.hpp"
#include "dg/percolation.hpp"
#include "dg/rigidity.hpp"
#include "dg/udgp.hpp"

namespace py = pybind11;
using namespace dg;

namespace {

// nested-list helpers keep the python surface free of custom matrix types

Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  const int c = n ? static_cast<int>(rows[0].size()) : 0;
  Matrix m(n, c);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != c)
      throw DimensionMismatch("ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

std::vector<std::vector<double>> matrix_rows(const Matrix& m) {
  std::vector<std::vector<double>> rows(m.rows(), std::vector<double>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return rows;
}

Realization realization_from_rows(const std::vector<std::vector<double>>& rows, int K) {
  Realization x(static_cast<int>(rows.size()), K);
  for (int i = 0; i < x.n; ++i) {
    if (static_cast<int>(rows[i].size()) != K)
      throw DimensionMismatch("realization rows must have K entries");
    for (int k = 0; k < K; ++k) x.at(i, k) = rows[i][k];
  }
  return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "distance geometry toolkit (C++ core)";
#ifdef DISTGEO_VERSION
  m.attr("__version__") = DISTGEO_VERSION;
#else
  m.attr("__version__") = "dev";
#endif

  py::register_exception<Error>(m, "DgError");

  py::class_<Edge>(m, "Edge")
      .def_readonly("u", &Edge::u)
      .def_readonly("v", &Edge::v)
      .def_readonly("dl", &Edge::dl)
      .def_readonly("du", &Edge::du)
      .def_readonly("exact", &Edge::exact)
      .def("__repr__", [](const Edge& e) {
        return "Edge(" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")";
      });
  m.def("exact_edge", &Edge::exact_edge, py::arg("u"), py::arg("v"), py::arg("d"));
  m.def("interval_edge", &Edge::interval_edge, py::arg("u"), py::arg("v"), py::arg("dl"),
        py::arg("du"));

  py::class_<DgpInstance>(m, "DgpInstance")
      .def(py::init([](int n, int K, const std::vector<Edge>& edges) {
             DgpInstance inst{n, K, edges};
             inst.check_invariants();
             return inst;
           }),
           py::arg("n"), py::arg("K"), py::arg("edges"),
           "Vertices are 0-based here; JSON files use 1-based labels.")
      .def_readonly("n", &DgpInstance::n)
      .def_readonly("K", &DgpInstance::K)
      .def_readonly("edges", &DgpInstance::edges)
      .def("to_json", [](const DgpInstance& inst) { return serialize(inst); });

  py::class_<Realization>(m, "Realization")
      .def(py::init(&realization_from_rows), py::arg("rows"), py::arg("K"))
      .def_readonly("n", &Realization::n)
      .def_readonly("K", &Realization::K)
      .def("rows",
           [](const Realization& x) {
             std::vector<std::vector<double>> rows(x.n, std::vector<double>(x.K));
             for (int i = 0; i < x.n; ++i)
               for (int k = 0; k < x.K; ++k) rows[i][k] = x.at(i, k);
             return rows;
           })
      .def("to_json", [](const Realization& x) { return serialize(x); });

  py::class_<EdgeViolation>(m, "EdgeViolation")
      .def_readonly("u", &EdgeViolation::u)
      .def_readonly("v", &EdgeViolation::v)
      .def_readonly("realized_distance", &EdgeViolation::realized_distance);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("max_abs_error", &ValidationReport::max_abs_error)
      .def_readonly("mean_sq_error", &ValidationReport::mean_sq_error)
      .def_readonly("violated_edges", &ValidationReport::violated_edges);

  m.def("load_instance", &load_instance, py::arg("text"));
  m.def("load_realization", &load_realization, py::arg("text"));
  m.def("validate", &validate, py::arg("instance"), py::arg("x"), py::arg("tol") = kDefaultTol);
  m.def("congruent", &congruent, py::arg("x"), py::arg("y"), py::arg("tol") = kDefaultTol,
        py::arg("allow_reflection") = true);
  m.def("eta", &eta, py::arg("instance"));

  // linear algebra
  m.def(
      "sqedm_from_realization",
      [](const Realization& x) { return matrix_rows(sqedm_from_realization(x).m); },
      py::arg("x"));
  m.def(
      "gram_from_sqedm",
      [](const std::vector<std::vector<double>>& d) {
        SquaredEdm D{matrix_from_rows(d)};
        D.check_invariants(1e-9);
        return matrix_rows(gram_from_sqedm(D).m);
      },
      py::arg("sqedm"));
  m.def(
      "eigen_sym",
      [](const std::vector<std::vector<double>>& b, double tol) {
        const EigenDecomposition eig = eigen_sym(GramMatrix{matrix_from_rows(b)}, tol);
        return py::make_tuple(eig.values, matrix_rows(eig.vectors));
      },
      py::arg("matrix"), py::arg("tol") = 1e-12,
      "Returns (eigenvalues_descending, eigenvector_rows).");
  m.def(
      "is_psd",
      [](const std::vector<std::vector<double>>& b, double tol) {
        return is_psd(GramMatrix{matrix_from_rows(b)}, tol);
      },
      py::arg("matrix"), py::arg("tol") = kDefaultTol);
  m.def(
      "realize_from_gram",
      [](const std::vector<std::vector<double>>& b, int K, double tol) {
        return realize_from_gram(GramMatrix{matrix_from_rows(b)}, K, tol);
      },
      py::arg("matrix"), py::arg("K"), py::arg("tol") = kDefaultTol);
  m.def(
      "numerical_rank",
      [](const std::vector<std::vector<double>>& m_, double tol_factor) {
        return numerical_rank(matrix_from_rows(m_), tol_factor);
      },
      py::arg("matrix"), py::arg("tol_factor") = 1e-10);
  m.def("barvinok_bound", &barvinok_bound, py::arg("m"));
  m.def(
      "edmcp_residual",
      [](const std::vector<std::vector<double>>& b, const DgpInstance& inst) {
        return edmcp_residual(GramMatrix{matrix_from_rows(b)}, inst);
      },
      py::arg("matrix"), py::arg("instance"));

  // rigidity
  py::enum_<RigidityStatus>(m, "RigidityStatus")
      .value("Rigid", RigidityStatus::Rigid)
      .value("Flexible", RigidityStatus::Flexible)
      .value("DegenerateAffineHull", RigidityStatus::DegenerateAffineHull);
  py::class_<RigidityVerdict>(m, "RigidityVerdict")
      .def_readonly("status", &RigidityVerdict::status)
      .def_readonly("rank", &RigidityVerdict::rank)
      .def_readonly("dof", &RigidityVerdict::dof);
  py::class_<Graph>(m, "Graph")
      .def(py::init([](int n, const std::vector<std::pair<int, int>>& edges) {
             Graph g;
             g.n = n;
             g.edges = edges;
             return g;
           }),
           py::arg("n"), py::arg("edges"))
      .def_static("from_instance", &Graph::from_instance)
      .def_readonly("n", &Graph::n)
      .def_readonly("edges", &Graph::edges);

  m.def(
      "rigidity_matrix",
      [](const DgpInstance& inst, const Realization& x) {
        return matrix_rows(rigidity_matrix(Framework(inst, x)).m);
      },
      py::arg("instance"), py::arg("x"));
  m.def(
      "infinitesimal_rigidity",
      [](const DgpInstance& inst, const Realization& x, double tol_factor) {
        return infinitesimal_rigidity(Framework(inst, x), tol_factor);
      },
      py::arg("instance"), py::arg("x"), py::arg("tol_factor") = 1e-10);
  m.def("generic_rigidity", &generic_rigidity, py::arg("graph"), py::arg("K"),
        py::arg("trials") = 3, py::arg("seed") = 0);
  m.def("rigid_k1", &rigid_k1, py::arg("graph"));
  m.def("laman_bruteforce", &laman_bruteforce, py::arg("graph"));
  m.def("maxwell_counts", &maxwell_counts, py::arg("graph"), py::arg("K"));
  py::enum_<PebbleVerdict>(m, "PebbleVerdict")
      .value("MinimallyRigid", PebbleVerdict::MinimallyRigid)
      .value("RigidWithRedundancy", PebbleVerdict::RigidWithRedundancy)
      .value("Flexible", PebbleVerdict::Flexible);
  py::class_<PebbleGameResult>(m, "PebbleGameResult")
      .def_readonly("verdict", &PebbleGameResult::verdict)
      .def_readonly("components", &PebbleGameResult::components)
      .def_readonly("independent_edges", &PebbleGameResult::independent_edges)
      .def_readonly("redundant_edges", &PebbleGameResult::redundant_edges);
  m.def("pebble_game_2_3", &pebble_game_2_3, py::arg("graph"));
  m.def("redundantly_rigid", &redundantly_rigid, py::arg("graph"), py::arg("K"),
        py::arg("trials") = 3, py::arg("seed") = 0);
  m.def("globally_rigid", &globally_rigid, py::arg("graph"), py::arg("K"), py::arg("trials") = 3,
        py::arg("seed") = 0);

  // branch and prune
  py::enum_<OrderKind>(m, "OrderKind")
      .value("DMDGP", OrderKind::DMDGP)
      .value("DDGP", OrderKind::DDGP)
      .value("NotDiscretizable", OrderKind::NotDiscretizable);
  py::class_<DiscretizationOrder>(m, "DiscretizationOrder")
      .def_readonly("kind", &DiscretizationOrder::kind)
      .def_readonly("reference_predecessors", &DiscretizationOrder::reference_predecessors)
      .def_readonly("discretization_edges", &DiscretizationOrder::discretization_edges)
      .def_readonly("pruning_edges", &DiscretizationOrder::pruning_edges);
  py::class_<PruningGroup>(m, "PruningGroup")
      .def_readonly("generator_levels", &PruningGroup::generator_levels)
      .def_readonly("order", &PruningGroup::order);
  py::class_<SolutionSet>(m, "SolutionSet")
      .def_readonly("solutions", &SolutionSet::solutions)
      .def_readonly("level_counts", &SolutionSet::level_counts)
      .def_readonly("pruned_count", &SolutionSet::pruned_count)
      .def_readonly("reflection_fixed", &SolutionSet::reflection_fixed)
      .def_readonly("stopped_early", &SolutionSet::stopped_early)
      .def("to_json", [](const SolutionSet& s) { return serialize(s); });

  m.def("classify_order", &classify_order, py::arg("instance"));
  m.def("sphere_intersect", &sphere_intersect, py::arg("centers"), py::arg("radii"),
        py::arg("tol") = kDefaultTol);
  m.def(
      "bp_solve",
      [](const DgpInstance& inst, double tol, std::uint64_t max_solutions, bool fix_reflection,
         int jobs) {
        BpOptions options;
        options.tol = tol;
        options.max_solutions = max_solutions;
        options.fix_reflection = fix_reflection;
        options.jobs = jobs;
        return bp_solve(inst, options);
      },
      py::arg("instance"), py::arg("tol") = kDefaultTol, py::arg("max_solutions") = 0,
      py::arg("fix_reflection") = true, py::arg("jobs") = 1);
  m.def("pruning_group", &pruning_group, py::arg("order"), py::arg("n"), py::arg("K"));
  m.def("partial_reflection", &partial_reflection, py::arg("x"), py::arg("level"), py::arg("K"));
  m.def("orbit_generate", &orbit_generate, py::arg("x"), py::arg("group"), py::arg("instance"),
        py::arg("tol") = kDefaultTol, py::arg("fix_reflection") = true);
  m.def(
      "predicted_solution_count",
      [](const DiscretizationOrder& order, int n, int K, bool fix_reflection) -> py::object {
        const auto count = predicted_solution_count(order, n, K, fix_reflection);
        if (!count) return py::none();
        return py::cast(*count);
      },
      py::arg("order"), py::arg("n"), py::arg("K"), py::arg("fix_reflection") = true,
      "Returns None when unavailable (interval pruning edges).");

  // unassigned DGP
  py::class_<DistanceList>(m, "DistanceList")
      .def(py::init([](int n, int K, const std::vector<double>& values) {
             DistanceList list{K, n, values};
             list.check_invariants();
             return list;
           }),
           py::arg("n"), py::arg("K"), py::arg("values"))
      .def_readonly("n", &DistanceList::n)
      .def_readonly("K", &DistanceList::K)
      .def_readonly("values", &DistanceList::values);
  py::class_<Assignment>(m, "Assignment").def_readonly("pairs", &Assignment::pairs);
  py::class_<TribondResult>(m, "TribondResult")
      .def_readonly("feasible", &TribondResult::feasible)
      .def_readonly("realization", &TribondResult::realization)
      .def_readonly("best_depth", &TribondResult::best_depth)
      .def_readonly("timed_out", &TribondResult::timed_out);
  m.def("tribond", &tribond, py::arg("list"), py::arg("tol") = 1e-6,
        py::arg("timeout_seconds") = 0.0);
  m.def("udgp_cost", &udgp_cost, py::arg("x"), py::arg("list"), py::arg("assignment"));
  m.def("best_assignment", &best_assignment, py::arg("x"), py::arg("list"));

  // embeddings and reductions
  py::class_<DistortionReport>(m, "DistortionReport")
      .def_readonly("epsilon_target", &DistortionReport::epsilon_target)
      .def_readonly("K_used", &DistortionReport::K_used)
      .def_readonly("fraction_within_bounds", &DistortionReport::fraction_within_bounds)
      .def_readonly("worst_ratio_low", &DistortionReport::worst_ratio_low)
      .def_readonly("worst_ratio_high", &DistortionReport::worst_ratio_high);
  m.def("partition_to_edgp1", &partition_to_edgp1, py::arg("a"));
  m.def("realize_partition_yes", &realize_partition_yes, py::arg("a"), py::arg("witness"));
  m.def("partition_from_realization", &partition_from_realization, py::arg("a"), py::arg("x"));
  m.def(
      "frechet_embed",
      [](const std::vector<std::vector<double>>& d) {
        return frechet_embed(FiniteMetric{matrix_from_rows(d)});
      },
      py::arg("metric"));
  m.def(
      "jll_project",
      [](const Realization& points, double epsilon, std::uint64_t seed, double c) {
        const JllResult r = jll_project(points, epsilon, seed, c);
        return py::make_tuple(r.points, r.report);
      },
      py::arg("points"), py::arg("epsilon"), py::arg("seed") = 0, py::arg("c") = 4.0);

  // percolation
  py::class_<LatticePatch>(m, "LatticePatch")
      .def_static("triangular", &LatticePatch::triangular, py::arg("rows"), py::arg("cols"))
      .def_static("gnp", &LatticePatch::gnp, py::arg("n"))
      .def_readonly("n", &LatticePatch::n)
      .def_readonly("edges", &LatticePatch::edges);
  py::class_<PercolationSnapshot>(m, "PercolationSnapshot")
      .def_readonly("edge_count", &PercolationSnapshot::edge_count)
      .def_readonly("eta", &PercolationSnapshot::eta)
      .def_readonly("largest_rigid_component", &PercolationSnapshot::largest_rigid_component)
      .def_readonly("spanning_rigid", &PercolationSnapshot::spanning_rigid);
  py::class_<PercolationTrajectory>(m, "PercolationTrajectory")
      .def_readonly("snapshots", &PercolationTrajectory::snapshots)
      .def_readonly("final_spanning", &PercolationTrajectory::final_spanning)
      .def_readonly("eta_at_rigidity", &PercolationTrajectory::eta_at_rigidity);
  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("p", &SweepRow::p)
      .def_readonly("fraction_spanning_rigid", &SweepRow::fraction_spanning_rigid)
      .def_readonly("mean_eta_at_rigidity", &SweepRow::mean_eta_at_rigidity);
  m.def(
      "run_percolation",
      [](const LatticePatch& patch, double p, std::uint64_t seed) {
        return run_percolation(patch, p, seed);
      },
      py::arg("patch"), py::arg("p"), py::arg("seed") = 0);
  m.def(
      "sweep",
      [](const LatticePatch& patch, const std::vector<double>& p_values, int trials,
         std::uint64_t seed, int jobs) { return sweep(patch, p_values, trials, seed, jobs); },
      py::arg("patch"), py::arg("p_values"), py::arg("trials"), py::arg("seed") = 0,
      py::arg("jobs") = 1);
}
