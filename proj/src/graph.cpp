#include "mapwss/graph.hpp"

#include <algorithm>
#include <queue>

#include "mapwss/error.hpp"

namespace mapwss {

Graph::Graph(int n) : adj_(static_cast<std::size_t>(n)) {}

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) : adj_(static_cast<std::size_t>(n)) {
  for (auto [u, v] : edges) {
    if (u == v) throw Error(ErrorCode::InvalidArgument, "loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= n || v >= n) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

void Graph::add_edge(int u, int v) {
  if (u == v) throw Error(ErrorCode::InvalidArgument, "loop at vertex " + std::to_string(u));
  if (u < 0 || v < 0 || u >= size() || v >= size()) throw Error(ErrorCode::InvalidArgument, "edge endpoint out of range");
  auto insert = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert(adj_[static_cast<std::size_t>(u)], v);
  insert(adj_[static_cast<std::size_t>(v)], u);
}

bool Graph::adjacent(int u, int v) const {
  const auto& list = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

Graph Graph::complement() const {
  Graph out(size());
  for (int u = 0; u < size(); ++u) {
    auto& list = out.adj_[static_cast<std::size_t>(u)];
    for (int v = 0; v < size(); ++v) {
      if (v != u && !adjacent(u, v)) list.push_back(v);
    }
  }
  return out;
}

Graph Graph::induced(std::span<const int> vertices) const {
  std::vector<int> local(adj_.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto& list = out.adj_[i];
    for (int w : neighbors(vertices[i])) {
      if (local[static_cast<std::size_t>(w)] >= 0) list.push_back(local[static_cast<std::size_t>(w)]);
    }
    std::sort(list.begin(), list.end());
  }
  return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) {
    for (int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::vector<int> two_coloring(const Graph& g, bool& ok) {
  std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
  ok = true;
  std::queue<int> q;
  for (int s = 0; s < g.size(); ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int v : g.neighbors(u)) {
        auto& cv = color[static_cast<std::size_t>(v)];
        if (cv < 0) {
          cv = 1 - color[static_cast<std::size_t>(u)];
          q.push(v);
        } else if (cv == color[static_cast<std::size_t>(u)]) {
          ok = false;
        }
      }
    }
  }
  return color;
}

}  // namespace mapwss
