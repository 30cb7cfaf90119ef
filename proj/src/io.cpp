#include "dg/io.hpp"

#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dg {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

int get_int(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + key + "'");
  return j[key].get<int>();
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ParseError(std::string("missing or non-numeric field '") + key + "'");
  return j[key].get<double>();
}

}  // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

DgpInstance load_instance(const std::string& text) {
  const json j = parse(text);
  DgpInstance inst;
  inst.K = get_int(j, "K");
  inst.n = get_int(j, "n");
  if (!j.contains("edges") || !j["edges"].is_array())
    throw ParseError("missing 'edges' array");
  for (const json& e : j["edges"]) {
    if (!e.is_object()) throw ParseError("edge entries must be objects");
    Edge edge;
    edge.u = get_int(e, "u") - 1;  // files are 1-based
    edge.v = get_int(e, "v") - 1;
    if (e.contains("d")) {
      edge.exact = true;
      edge.dl = edge.du = get_number(e, "d");
    } else if (e.contains("dl") || e.contains("du")) {
      edge.exact = false;
      edge.dl = get_number(e, "dl");
      edge.du = get_number(e, "du");
    } else {
      throw ParseError("edge needs either 'd' or 'dl'/'du'");
    }
    inst.edges.push_back(edge);
  }
  inst.check_invariants();
  return inst;
}

Realization load_realization(const std::string& text) {
  const json j = parse(text);
  const int K = get_int(j, "K");
  const int n = get_int(j, "n");
  if (K <= 0 || n < 0) throw ParseError("bad dimensions");
  if (!j.contains("x") || !j["x"].is_array() || static_cast<int>(j["x"].size()) != n)
    throw ParseError("'x' must be an array of n rows");
  Realization x(n, K);
  for (int i = 0; i < n; ++i) {
    const json& row = j["x"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != K)
      throw ParseError("realization rows must have K entries");
    for (int k = 0; k < K; ++k) {
      if (!row[k].is_number()) throw ParseError("realization entries must be numbers");
      x.at(i, k) = row[k].get<double>();
    }
  }
  return x;
}

Matrix load_matrix(const std::string& text) {
  const json j = parse(text);
  const int n = get_int(j, "n");
  if (!j.contains("m") || !j["m"].is_array() || static_cast<int>(j["m"].size()) != n)
    throw ParseError("'m' must be an array of n rows");
  int cols = -1;
  for (const json& row : j["m"]) {
    if (!row.is_array()) throw ParseError("matrix rows must be arrays");
    if (cols < 0) cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != cols) throw ParseError("ragged matrix rows");
  }
  if (n == 0) return Matrix(0, 0);
  Matrix m(n, cols);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < cols; ++c) {
      const json& cell = j["m"][i][c];
      if (!cell.is_number()) throw ParseError("matrix entries must be numbers");
      m(i, c) = cell.get<double>();
    }
  return m;
}

DistanceList load_distance_list(const std::string& text) {
  const json j = parse(text);
  DistanceList list;
  list.K = get_int(j, "K");
  list.n = get_int(j, "n");
  if (!j.contains("distances") || !j["distances"].is_array())
    throw ParseError("missing 'distances' array");
  for (const json& v : j["distances"]) {
    if (!v.is_number()) throw ParseError("distances must be numbers");
    list.values.push_back(v.get<double>());
  }
  list.check_invariants();
  return list;
}

namespace {

void write_realization_body(std::ostringstream& out, const Realization& x) {
  out << "{\"K\":" << x.K << ",\"n\":" << x.n << ",\"x\":[";
  for (int i = 0; i < x.n; ++i) {
    if (i) out << ',';
    out << '[';
    for (int k = 0; k < x.K; ++k) {
      if (k) out << ',';
      out << format_number(x.at(i, k));
    }
    out << ']';
  }
  out << "]}";
}

}  // namespace

std::string serialize(const DgpInstance& instance) {
  std::ostringstream out;
  out << "{\"K\":" << instance.K << ",\"n\":" << instance.n << ",\"edges\":[";
  bool first = true;
  for (const Edge& e : instance.edges) {
    if (!first) out << ',';
    first = false;
    out << "{\"u\":" << e.u + 1 << ",\"v\":" << e.v + 1;
    if (e.exact)
      out << ",\"d\":" << format_number(e.d());
    else
      out << ",\"dl\":" << format_number(e.dl) << ",\"du\":" << format_number(e.du);
    out << '}';
  }
  out << "]}";
  return out.str();
}

std::string serialize(const Realization& x) {
  std::ostringstream out;
  write_realization_body(out, x);
  return out.str();
}

std::string serialize(const Matrix& m) {
  std::ostringstream out;
  out << "{\"n\":" << m.rows() << ",\"m\":[";
  for (int i = 0; i < m.rows(); ++i) {
    if (i) out << ',';
    out << '[';
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_number(m(i, j));
    }
    out << ']';
  }
  out << "]}";
  return out.str();
}

std::string serialize(const DistanceList& list) {
  std::ostringstream out;
  out << "{\"K\":" << list.K << ",\"n\":" << list.n << ",\"distances\":[";
  for (size_t i = 0; i < list.values.size(); ++i) {
    if (i) out << ',';
    out << format_number(list.values[i]);
  }
  out << "]}";
  return out.str();
}

std::string serialize(const SolutionSet& solutions) {
  std::ostringstream out;
  out << "{\"solutions\":[";
  for (size_t i = 0; i < solutions.solutions.size(); ++i) {
    if (i) out << ',';
    write_realization_body(out, solutions.solutions[i]);
  }
  out << "],\"tree_stats\":{\"level_counts\":[";
  for (size_t i = 0; i < solutions.level_counts.size(); ++i) {
    if (i) out << ',';
    out << solutions.level_counts[i];
  }
  out << "],\"pruned\":" << solutions.pruned_count << "}}";
  return out.str();
}

std::string serialize(const ValidationReport& report) {
  std::ostringstream out;
  out << "{\"max_abs_error\":" << format_number(report.max_abs_error)
      << ",\"mean_sq_error\":" << format_number(report.mean_sq_error) << ",\"violated_edges\":[";
  for (size_t i = 0; i < report.violated_edges.size(); ++i) {
    const EdgeViolation& v = report.violated_edges[i];
    if (i) out << ',';
    out << "{\"u\":" << v.u + 1 << ",\"v\":" << v.v + 1
        << ",\"realized_distance\":" << format_number(v.realized_distance) << '}';
  }
  out << "]}";
  return out.str();
}

}  // namespace dg
