#pragma once

#include "mapwss/graph.hpp"
#include "mapwss/model.hpp"
#include "mapwss/mwss.hpp"

namespace mapwss {

inline constexpr double kOracleMaxConfigurations = 1 << 20;
inline constexpr int kOracleMaxNodes = 24;

/// Enumerates every configuration (first variable most significant) and
/// keeps the first strict maximum, i.e. the lexicographically smallest
/// optimum.  Shares no evaluation code with the solvers.
MapSolution brute_force_map(const Model& model);

/// Exhaustive MWSS over at most 24 nodes.
StableSetSolution brute_force_mwss(const WeightedGraph& graph);

}  // namespace mapwss
