#pragma once

#include <string>

#include "dg/bp.hpp"
#include "dg/core.hpp"
#include "dg/matrix.hpp"
#include "dg/udgp.hpp"

namespace dg {

// JSON formats. Vertex labels are 1-based in files and 0-based in memory;
// the shift happens here and nowhere else. All numbers are written with 17
// significant digits so that decimal round trips are exact.
//
//   instance      {"K":int,"n":int,"edges":[{"u":..,"v":..,"d":..} |
//                                           {"u":..,"v":..,"dl":..,"du":..}]}
//   realization   {"K":int,"n":int,"x":[[..],..]}
//   matrix        {"n":int,"m":[[..],..]}
//   distance list {"K":int,"n":int,"distances":[..]}
//   solution set  {"solutions":[realization,..],
//                  "tree_stats":{"level_counts":[..],"pruned":int}}

DgpInstance load_instance(const std::string& text);
Realization load_realization(const std::string& text);
Matrix load_matrix(const std::string& text);
DistanceList load_distance_list(const std::string& text);

std::string serialize(const DgpInstance& instance);
std::string serialize(const Realization& x);
std::string serialize(const Matrix& m);
std::string serialize(const DistanceList& list);
std::string serialize(const SolutionSet& solutions);
std::string serialize(const ValidationReport& report);

/// One double, 17 significant digits ("%.17g").
std::string format_number(double v);

}  // namespace dg
