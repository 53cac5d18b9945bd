#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mapwss/model.hpp"
#include "mapwss/nmrf.hpp"

namespace mapwss {

/// A maximal 2-connected subgraph, a bridge, or an isolated vertex.
struct Block {
  std::vector<int> vertices;  // ascending
  std::vector<int> edges;     // indices into SignedGraph::edges
};

struct BlockTree {
  std::vector<Block> blocks;
  std::vector<int> cut_vertices;             // ascending
  std::vector<std::pair<int, int>> links;    // (block index, cut vertex)
};

/// Iterative lowpoint DFS; linear in |V| + |E|.  Isolated vertices become
/// single-vertex blocks.
BlockTree block_decompose(const SignedGraph& graph);

/// A cycle with an odd number of repulsive edges, if any exists.
std::optional<SignedCycle> find_frustrated_cycle(const SignedGraph& graph);

struct Bipartition {
  std::vector<int> first;   // V1
  std::vector<int> second;  // V2
};

/// Partition with every repulsive edge crossing and no associative edge
/// crossing, if one exists.  In each balanced component the smallest vertex
/// is placed in `first`.
std::optional<Bipartition> detect_br(const SignedGraph& graph);

struct BrClass {
  Bipartition partition;
};

/// Repulsive base s - t with repulsive-repulsive apexes r_i and
/// associative-associative apexes a_i.
struct TmnClass {
  int s = 0;
  int t = 0;
  std::vector<int> repulsive_apexes;
  std::vector<int> associative_apexes;
  int m() const { return static_cast<int>(repulsive_apexes.size()); }
  int n() const { return static_cast<int>(associative_apexes.size()); }
};

/// Associative base s - t with mixed-sign apexes.
struct UnClass {
  int s = 0;
  int t = 0;
  std::vector<int> apexes;
  int n() const { return static_cast<int>(apexes.size()); }
};

struct IntractableClass {
  SignedCycle witness;
};

using BlockClass = std::variant<BrClass, TmnClass, UnClass, IntractableClass>;

std::string_view class_name(const BlockClass& cls);
inline bool is_tractable(const BlockClass& cls) { return !std::holds_alternative<IntractableClass>(cls); }

/// Classifies a graph that is a single block (2-connected, a bridge, or a
/// lone vertex).
BlockClass classify_block(const SignedGraph& block);

/// Classifies one block of a larger graph; vertex ids stay global.
BlockClass classify_block(const SignedGraph& graph, const Block& block);

/// Enode forms for a block's edges: B_R blocks keep 00 on associative edges
/// and 01 on repulsive ones; T/U blocks use the forms that close every apex
/// triangle without connecting snodes; intractable blocks use the defaults.
EnodePlan block_enode_plan(const SignedGraph& graph, const Block& block, const BlockClass& cls);

struct ClassifiedBlock {
  Block block;
  BlockClass cls;
};

struct TractabilityReport {
  bool tractable = true;
  SignedGraph graph;
  std::vector<ClassifiedBlock> blocks;
  std::vector<int> cut_vertices;
  EnodePlan plan;  // aligned with graph.edges

  const ClassifiedBlock* first_intractable() const;
};

TractabilityReport classify_signed(const SignedGraph& graph);

/// Signed view, block decomposition and per-block classification; linear
/// in the number of edges.
TractabilityReport classify_model(const Model& model, double eps = kDefaultEps);

}  // namespace mapwss
