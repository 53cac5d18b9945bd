#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace mapwss {

/// Simple undirected graph on vertices 0..n-1 with sorted neighbour lists.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);
  /// Builds from an edge list; duplicate edges are merged.  Loops throw.
  Graph(int n, std::span<const std::pair<int, int>> edges);

  int size() const noexcept { return static_cast<int>(adj_.size()); }
  std::size_t edge_count() const noexcept;

  void add_edge(int u, int v);
  bool adjacent(int u, int v) const;
  std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }

  Graph complement() const;
  /// Induced subgraph; vertex i of the result is vertices[i].
  Graph induced(std::span<const int> vertices) const;
  std::vector<std::pair<int, int>> edges() const;

 private:
  std::vector<std::vector<int>> adj_;
};

using PlainGraph = Graph;

struct WeightedGraph {
  Graph graph;
  std::vector<double> weights;
};

/// BFS two-colouring (0/1 per vertex); `ok` is cleared if an odd cycle exists.
std::vector<int> two_coloring(const Graph& g, bool& ok);

}  // namespace mapwss
