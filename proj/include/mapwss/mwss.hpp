#pragma once

#include <span>
#include <string>
#include <vector>

#include "mapwss/graph.hpp"
#include "mapwss/model.hpp"
#include "mapwss/nmrf.hpp"

namespace mapwss {

inline constexpr int kDefaultBranchCap = 40;

struct StableSetSolution {
  std::vector<int> nodes;  // ascending
  double weight = 0.0;
};

/// Exact MWSS on a bipartite graph via minimum weight vertex cover (max
/// flow).  side[v] is 0 or 1; throws NotBipartite if an edge stays on one
/// side.  The source side of the canonical minimum cut decides ties.
StableSetSolution mwss_bipartite(const WeightedGraph& graph, std::span<const int> side);

/// Exact MWSS by branch and bound: branch on a maximum-degree vertex, bound
/// by a greedy weighted clique cover.  Throws TooLarge above `max_nodes`.
StableSetSolution mwss_branch_bound(const WeightedGraph& graph, int max_nodes = kDefaultBranchCap);

/// Branch and bound on each connected component separately; the cap applies
/// per component.
StableSetSolution mwss_by_components(const WeightedGraph& graph, int max_nodes = kDefaultBranchCap);

/// Extends a MWSS of the pruned graph (indices into pruned.nodes) by
/// re-admitting pruned nodes, in group order then assignment order, until
/// every clique group has a representative.  The result lists node ids and
/// the total weight of all chosen nodes.  Throws Inconsistent on failure.
StableSetSolution mmwss_complete(const Nmrf& pruned, const StableSetSolution& base);

struct MapSolution {
  std::vector<int> assignment;  // label per variable
  double objective = 0.0;
  std::string method;
};

/// Reads the labels off the singleton nodes of a completed MMWSS (node ids)
/// and recomputes the objective from `model`.  `constant` is the NMRF's
/// normalization constant; the check tolerance is relative to the objective.
MapSolution decode_map(const StableSetSolution& mmwss, const Nmrf& nmrf, const Model& model, double constant,
                       double tolerance = 1e-6);

}  // namespace mapwss
