#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mapwss/graph.hpp"
#include "mapwss/model.hpp"
#include "mapwss/submodular.hpp"

namespace mapwss {

using Rng = std::mt19937_64;

struct TableOptions {
  bool integer = false;    // integer entries in [-5, 5]
  double magnitude = 1.0;  // real entries in [-magnitude, magnitude]
};

/// 2x2 table whose associativity has the requested sign, at least 0.1 (or
/// 1 for integer tables) away from zero.
EdgeTable random_edge_table(Rng& rng, Sign sign, const TableOptions& opt = {});

struct SignedTopology {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<Sign> signs;
};

/// Model on a fixed signed topology with random tables of matching signs and
/// random singletons on every variable.
Model model_on(const SignedTopology& topo, Rng& rng, const TableOptions& opt = {});

/// Tractable topology with at most `max_vertices` vertices: B_R pieces,
/// T_{m,n}, U_n and bridges glued at cut vertices, then relabelled at random.
SignedTopology random_tractable_topology(Rng& rng, int max_vertices);

Model random_tractable_model(Rng& rng, int max_vertices, const TableOptions& opt = {});

/// G(n, p) with independent random signs.
SignedTopology random_signed_topology(Rng& rng, int n, double edge_probability);

/// Random balanced topology: random graph, signs from a random bipartition.
SignedTopology random_br_topology(Rng& rng, int n, double edge_probability);

/// A fixed B_R example with both edge types, cycles and a chord.
SignedTopology example_br_topology();

/// Chain of blocks sharing cut vertices (triangles of each tractable class
/// and balanced 4-cycles) with at least `edges` edges.
SignedTopology block_chain_topology(int edges);

HighOrderPotential random_potential(Rng& rng, int k, double magnitude = 2.0);
/// Rejection-sampled up to order 3; from order 4 a random table lifted by a
/// multiple of the sum of pairwise products.
HighOrderPotential random_supermodular(Rng& rng, int k);
HighOrderPotential random_non_supermodular(Rng& rng, int k);

WeightedGraph random_weighted_graph(Rng& rng, int n, double edge_probability);
/// Random bipartite graph; `side` receives the colouring.
WeightedGraph random_bipartite_graph(Rng& rng, int n, double edge_probability, std::vector<int>& side);

}  // namespace mapwss
