#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dg/bp.hpp"
#include "dg/core.hpp"
#include "dg/embed.hpp"
#include "dg/graph.hpp"
#include "dg/io.hpp"
#include "dg/linalg.hpp"
#include "dg/percolation.hpp"
#include "dg/rigidity.hpp"
#include "dg/udgp.hpp"

namespace {

constexpr const char* kVersion = "dg 0.1.0";

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw dg::Error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw dg::Error("cannot open output file: " + path);
  f << data << '\n';
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

std::vector<long long> parse_int_list(const std::string& text) {
  std::vector<long long> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoll(item));
  }
  return values;
}

const char* status_name(dg::RigidityStatus s) {
  switch (s) {
    case dg::RigidityStatus::Rigid: return "Rigid";
    case dg::RigidityStatus::Flexible: return "Flexible";
    default: return "DegenerateAffineHull";
  }
}

const char* verdict_name(dg::PebbleVerdict v) {
  switch (v) {
    case dg::PebbleVerdict::MinimallyRigid: return "MinimallyRigid";
    case dg::PebbleVerdict::RigidWithRedundancy: return "RigidWithRedundancy";
    default: return "Flexible";
  }
}

struct ConvertCmd {
  std::string in, out, kind = "auto";
};
struct ValidateCmd {
  std::string instance, realization, out;
  double tol = dg::kDefaultTol;
};
struct MatrixCmd {
  std::string in, out;
  int dim = 0;
  double tol = dg::kDefaultTol;
  double tol_factor = 1e-10;
};
struct RigidityCmd {
  std::string in, out, realization, mode = "generic";
  int dim = 0;
  int trials = 3;
  std::uint64_t seed = 0;
};
struct SolveBpCmd {
  std::string in, out;
  double tol = dg::kDefaultTol;
  std::uint64_t max_solutions = 0;
  bool first_only = false;
  bool fix_reflection = true;
  bool stats = false;
  int jobs = 1;
  std::uint64_t seed = 0;
};
struct TribondCmd {
  std::string in, out;
  double tol = 1e-6;
  double timeout_seconds = 0.0;
};
struct ReduceCmd {
  std::string a, out;
};
struct FrechetCmd {
  std::string in, out;
};
struct JllCmd {
  std::string in, out;
  double epsilon = 0.5;
  double constant = 4.0;
  std::uint64_t seed = 0;
};
struct PercolateCmd {
  std::string patch = "triangular", p_list = "0.5", out, process = "dilution";
  int rows = 10, cols = 10, gnp = 0;
  int trials = 50;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::uint64_t max_steps = 0;
};

void run_convert(const ConvertCmd& cmd) {
  const std::string text = read_input(cmd.in);
  std::string kind = cmd.kind;
  if (kind == "auto") {
    const auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw dg::ParseError("malformed JSON");
    if (j.contains("edges")) kind = "instance";
    else if (j.contains("x")) kind = "realization";
    else if (j.contains("m")) kind = "matrix";
    else if (j.contains("distances")) kind = "dlist";
    else throw dg::ParseError("cannot auto-detect input kind");
  }
  if (kind == "instance") write_output(cmd.out, dg::serialize(dg::load_instance(text)));
  else if (kind == "realization") write_output(cmd.out, dg::serialize(dg::load_realization(text)));
  else if (kind == "matrix") write_output(cmd.out, dg::serialize(dg::load_matrix(text)));
  else if (kind == "dlist") write_output(cmd.out, dg::serialize(dg::load_distance_list(text)));
  else throw dg::Error("unknown kind: " + kind);
}

void run_validate(const ValidateCmd& cmd) {
  const dg::DgpInstance inst = dg::load_instance(read_input(cmd.instance));
  const dg::Realization x = dg::load_realization(read_input(cmd.realization));
  write_output(cmd.out, dg::serialize(dg::validate(inst, x, cmd.tol)));
}

void run_edm2gram(const MatrixCmd& cmd) {
  dg::SquaredEdm D{dg::load_matrix(read_input(cmd.in))};
  D.check_invariants(1e-9);
  write_output(cmd.out, dg::serialize(dg::gram_from_sqedm(D).m));
}

void run_gram2x(const MatrixCmd& cmd) {
  const dg::GramMatrix B{dg::load_matrix(read_input(cmd.in))};
  if (cmd.dim <= 0) throw dg::Error("gram2x needs --dim K > 0");
  write_output(cmd.out, dg::serialize(dg::realize_from_gram(B, cmd.dim, cmd.tol)));
}

void run_rank(const MatrixCmd& cmd) {
  const dg::Matrix M = dg::load_matrix(read_input(cmd.in));
  std::ostringstream out;
  out << "{\"rank\":" << dg::numerical_rank(M, cmd.tol_factor) << "}";
  write_output(cmd.out, out.str());
}

void run_rigidity(const RigidityCmd& cmd) {
  const dg::DgpInstance inst = dg::load_instance(read_input(cmd.in));
  const dg::Graph graph = dg::Graph::from_instance(inst);
  const int K = cmd.dim > 0 ? cmd.dim : inst.K;
  std::ostringstream out;
  if (cmd.mode == "framework") {
    if (cmd.realization.empty()) throw dg::Error("framework mode needs --realization");
    const dg::Realization x = dg::load_realization(read_input(cmd.realization));
    const dg::RigidityVerdict v = dg::infinitesimal_rigidity(dg::Framework(inst, x));
    out << "{\"status\":\"" << status_name(v.status) << "\",\"rank\":" << v.rank
        << ",\"dof\":" << v.dof << "}";
  } else if (cmd.mode == "generic") {
    const dg::RigidityVerdict v = dg::generic_rigidity(graph, K, cmd.trials, cmd.seed);
    out << "{\"status\":\"" << status_name(v.status) << "\",\"rank\":" << v.rank
        << ",\"dof\":" << v.dof << ",\"method\":\"generic (probabilistic)\"}";
  } else if (cmd.mode == "laman") {
    out << "{\"laman\":" << (dg::laman_bruteforce(graph) ? "true" : "false") << "}";
  } else if (cmd.mode == "pebble") {
    const dg::PebbleGameResult r = dg::pebble_game_2_3(graph);
    out << "{\"verdict\":\"" << verdict_name(r.verdict) << "\",\"components\":[";
    for (size_t i = 0; i < r.components.size(); ++i) {
      if (i) out << ',';
      out << '[';
      for (size_t j = 0; j < r.components[i].size(); ++j) {
        if (j) out << ',';
        out << r.components[i][j] + 1;
      }
      out << ']';
    }
    out << "],\"independent_edges\":" << r.independent_edges
        << ",\"redundant_edges\":" << r.redundant_edges << "}";
  } else if (cmd.mode == "global") {
    out << "{\"globally_rigid\":"
        << (dg::globally_rigid(graph, K, cmd.trials, cmd.seed) ? "true" : "false") << "}";
  } else {
    throw dg::Error("unknown rigidity mode: " + cmd.mode);
  }
  write_output(cmd.out, out.str());
}

void run_solve_bp(const SolveBpCmd& cmd) {
  const dg::DgpInstance inst = dg::load_instance(read_input(cmd.in));
  dg::BpOptions options;
  options.tol = cmd.tol;
  options.max_solutions = cmd.first_only ? 1 : cmd.max_solutions;
  options.fix_reflection = cmd.fix_reflection;
  options.jobs = cmd.jobs;
  options.seed = cmd.seed;
  const dg::SolutionSet solutions = dg::bp_solve(inst, options);
  if (cmd.stats) {
    std::cerr << "levels:";
    for (const auto c : solutions.level_counts) std::cerr << ' ' << c;
    std::cerr << "\npruned: " << solutions.pruned_count
              << "\nsolutions: " << solutions.solutions.size()
              << (solutions.stopped_early ? " (stopped early)" : "") << '\n';
  }
  write_output(cmd.out, dg::serialize(solutions));
}

void run_tribond(const TribondCmd& cmd) {
  const dg::DistanceList list = dg::load_distance_list(read_input(cmd.in));
  const dg::TribondResult result = dg::tribond(list, cmd.tol, cmd.timeout_seconds);
  std::ostringstream out;
  if (result.feasible) {
    out << "{\"status\":\"realized\",\"realization\":" << dg::serialize(result.realization)
        << "}";
  } else {
    out << "{\"status\":\"" << (result.timed_out ? "timeout" : "infeasible")
        << "\",\"best_depth\":" << result.best_depth << "}";
  }
  write_output(cmd.out, out.str());
}

void run_reduce(const ReduceCmd& cmd) {
  std::vector<long long> a;
  if (!cmd.a.empty()) {
    a = parse_int_list(cmd.a);
  } else {
    const auto j = nlohmann::json::parse(read_input(""), nullptr, false);
    if (j.is_discarded() || !j.is_array()) throw dg::ParseError("expected a JSON array of integers");
    for (const auto& v : j) a.push_back(v.get<long long>());
  }
  write_output(cmd.out, dg::serialize(dg::partition_to_edgp1(a)));
}

void run_frechet(const FrechetCmd& cmd) {
  dg::FiniteMetric metric{dg::load_matrix(read_input(cmd.in))};
  write_output(cmd.out, dg::serialize(dg::frechet_embed(metric)));
}

void run_jll(const JllCmd& cmd) {
  const dg::Realization points = dg::load_realization(read_input(cmd.in));
  const dg::JllResult r = dg::jll_project(points, cmd.epsilon, cmd.seed, cmd.constant);
  std::ostringstream out;
  out << "{\"points\":" << dg::serialize(r.points) << ",\"report\":{\"epsilon_target\":"
      << dg::format_number(r.report.epsilon_target) << ",\"K_used\":" << r.report.K_used
      << ",\"fraction_within_bounds\":" << dg::format_number(r.report.fraction_within_bounds)
      << ",\"worst_ratio_low\":" << dg::format_number(r.report.worst_ratio_low)
      << ",\"worst_ratio_high\":" << dg::format_number(r.report.worst_ratio_high) << "}}";
  write_output(cmd.out, out.str());
}

void run_percolate(const PercolateCmd& cmd) {
  dg::LatticePatch patch = cmd.patch == "gnp" || cmd.gnp > 0
                               ? dg::LatticePatch::gnp(cmd.gnp > 0 ? cmd.gnp : 10)
                               : dg::LatticePatch::triangular(cmd.rows, cmd.cols);
  dg::PercolationOptions options;
  options.process = cmd.process == "loop" ? dg::PercolationProcess::ResamplingLoop
                                          : dg::PercolationProcess::BondDilution;
  options.max_steps = cmd.max_steps;
  const std::vector<double> ps = parse_double_list(cmd.p_list);
  if (ps.empty()) throw dg::Error("empty --p-list");
  const auto rows = dg::sweep(patch, ps, cmd.trials, cmd.seed, cmd.jobs, options);
  std::ostringstream out;
  out << "p,fraction_spanning_rigid,mean_eta";
  for (const auto& row : rows)
    out << '\n'
        << dg::format_number(row.p) << ',' << dg::format_number(row.fraction_spanning_rigid)
        << ',' << dg::format_number(row.mean_eta_at_rigidity);
  write_output(cmd.out, out.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distance geometry toolkit: realizations, rigidity, branch-and-prune"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ConvertCmd convert_cmd;
  auto* convert = app.add_subcommand("convert", "parse and re-emit a file in canonical form");
  convert->add_option("--in", convert_cmd.in, "input path (default stdin)");
  convert->add_option("--out", convert_cmd.out, "output path (default stdout)");
  convert->add_option("--kind", convert_cmd.kind,
                      "instance|realization|matrix|dlist|auto (default auto)");

  ValidateCmd validate_cmd;
  auto* validate = app.add_subcommand("validate", "check a realization against an instance");
  validate->add_option("--instance", validate_cmd.instance, "instance JSON path")->required();
  validate->add_option("--realization", validate_cmd.realization, "realization JSON path")
      ->required();
  validate->add_option("--tol", validate_cmd.tol, "violation tolerance");
  validate->add_option("--out", validate_cmd.out, "output path");

  MatrixCmd edm2gram_cmd;
  auto* edm2gram = app.add_subcommand("edm2gram", "squared EDM to centered Gram matrix");
  edm2gram->add_option("--in", edm2gram_cmd.in, "matrix JSON path");
  edm2gram->add_option("--out", edm2gram_cmd.out, "output path");

  MatrixCmd gram2x_cmd;
  auto* gram2x = app.add_subcommand("gram2x", "factor a PSD Gram matrix into a realization");
  gram2x->add_option("--in", gram2x_cmd.in, "matrix JSON path");
  gram2x->add_option("--out", gram2x_cmd.out, "output path");
  gram2x->add_option("--dim", gram2x_cmd.dim, "target dimension K")->required();
  gram2x->add_option("--tol", gram2x_cmd.tol, "PSD/rank tolerance");

  MatrixCmd rank_cmd;
  auto* rank = app.add_subcommand("rank", "numerical rank of a matrix");
  rank->add_option("--in", rank_cmd.in, "matrix JSON path");
  rank->add_option("--out", rank_cmd.out, "output path");
  rank->add_option("--tol-factor", rank_cmd.tol_factor, "singular value cutoff factor");

  RigidityCmd rigidity_cmd;
  auto* rigidity = app.add_subcommand("rigidity", "rigidity analysis of a graph or framework");
  rigidity->add_option("--in", rigidity_cmd.in, "instance JSON path");
  rigidity->add_option("--out", rigidity_cmd.out, "output path");
  rigidity->add_option("--mode", rigidity_cmd.mode, "framework|generic|laman|pebble|global");
  rigidity->add_option("--dim", rigidity_cmd.dim, "dimension K (default: instance K)");
  rigidity->add_option("--trials", rigidity_cmd.trials, "randomized trials");
  rigidity->add_option("--seed", rigidity_cmd.seed, "random seed");
  rigidity->add_option("--realization", rigidity_cmd.realization,
                       "realization JSON (framework mode)");

  SolveBpCmd solve_cmd;
  auto* solve = app.add_subcommand("solve-bp", "branch-and-prune solver");
  solve->add_option("--in", solve_cmd.in, "instance JSON path");
  solve->add_option("--out", solve_cmd.out, "output path");
  solve->add_option("--tol", solve_cmd.tol, "distance tolerance");
  solve->add_option("--max-solutions", solve_cmd.max_solutions, "stop after this many");
  auto* all_flag = solve->add_flag("--all", "find all incongruent solutions (default)");
  solve->add_flag("--first", solve_cmd.first_only, "stop at the first solution")
      ->excludes(all_flag);
  solve->add_flag("--fix-reflection,!--no-fix-reflection", solve_cmd.fix_reflection,
                  "discard one side of the first branching (default on)");
  solve->add_flag("--stats", solve_cmd.stats, "print level counts to stderr");
  solve->add_option("--jobs", solve_cmd.jobs, "worker threads");
  solve->add_option("--seed", solve_cmd.seed, "random seed");

  TribondCmd tribond_cmd;
  auto* tribond = app.add_subcommand("udgp-tribond", "realize an unassigned distance list");
  tribond->add_option("--in", tribond_cmd.in, "distance list JSON path");
  tribond->add_option("--out", tribond_cmd.out, "output path");
  tribond->add_option("--tol", tribond_cmd.tol, "matching tolerance");
  tribond->add_option("--timeout-seconds", tribond_cmd.timeout_seconds, "wall clock budget");

  ReduceCmd reduce_cmd;
  auto* reduce = app.add_subcommand("reduce-partition", "Partition instance to a 1D cycle");
  reduce->add_option("--a", reduce_cmd.a, "comma separated positive integers");
  reduce->add_option("--out", reduce_cmd.out, "output path");

  FrechetCmd frechet_cmd;
  auto* frechet = app.add_subcommand("embed-frechet", "exact l_inf embedding of a metric");
  frechet->add_option("--in", frechet_cmd.in, "metric matrix JSON path");
  frechet->add_option("--out", frechet_cmd.out, "output path");

  JllCmd jll_cmd;
  auto* jll = app.add_subcommand("jll", "random projection with distortion report");
  jll->add_option("--in", jll_cmd.in, "points as realization JSON");
  jll->add_option("--out", jll_cmd.out, "output path");
  jll->add_option("--epsilon", jll_cmd.epsilon, "target distortion in (0,1)");
  jll->add_option("--constant", jll_cmd.constant, "dimension constant c");
  jll->add_option("--seed", jll_cmd.seed, "random seed");

  PercolateCmd percolate_cmd;
  auto* percolate = app.add_subcommand("percolate", "rigidity percolation sweep");
  percolate->add_option("--patch", percolate_cmd.patch, "triangular|gnp");
  percolate->add_option("--rows", percolate_cmd.rows, "triangular patch rows");
  percolate->add_option("--cols", percolate_cmd.cols, "triangular patch cols");
  percolate->add_option("--gnp", percolate_cmd.gnp, "complete graph size for gnp");
  percolate->add_option("--p-list", percolate_cmd.p_list, "comma separated probabilities");
  percolate->add_option("--trials", percolate_cmd.trials, "trials per p");
  percolate->add_option("--seed", percolate_cmd.seed, "random seed");
  percolate->add_option("--jobs", percolate_cmd.jobs, "worker threads");
  percolate->add_option("--process", percolate_cmd.process, "dilution|loop");
  percolate->add_option("--max-steps", percolate_cmd.max_steps, "loop variant step budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*convert) run_convert(convert_cmd);
    else if (*validate) run_validate(validate_cmd);
    else if (*edm2gram) run_edm2gram(edm2gram_cmd);
    else if (*gram2x) run_gram2x(gram2x_cmd);
    else if (*rank) run_rank(rank_cmd);
    else if (*rigidity) run_rigidity(rigidity_cmd);
    else if (*solve) run_solve_bp(solve_cmd);
    else if (*tribond) run_tribond(tribond_cmd);
    else if (*reduce) run_reduce(reduce_cmd);
    else if (*frechet) run_frechet(frechet_cmd);
    else if (*jll) run_jll(jll_cmd);
    else if (*percolate) run_percolate(percolate_cmd);
  } catch (const dg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
