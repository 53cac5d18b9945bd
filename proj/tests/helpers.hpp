#pragma once

#include <string>
#include <vector>

#include "mapwss/generators.hpp"
#include "mapwss/model.hpp"

namespace mapwss::test {

inline std::vector<Variable> binary_vars(int n) {
  std::vector<Variable> vars;
  for (int i = 0; i < n; ++i) vars.push_back({"x" + std::to_string(i), 2});
  return vars;
}

// Pairwise model from (u, v, table) triples plus optional singletons.
struct EdgeSpec {
  int u;
  int v;
  EdgeTable table;
};

inline Model pairwise(int n, const std::vector<EdgeSpec>& edges, const std::vector<std::array<double, 2>>& unary = {}) {
  std::vector<Potential> pots;
  for (std::size_t i = 0; i < unary.size(); ++i) pots.push_back({{static_cast<int>(i)}, {unary[i][0], unary[i][1]}});
  for (const auto& e : edges) pots.push_back({{e.u, e.v}, {e.table.begin(), e.table.end()}});
  return Model(binary_vars(n), std::move(pots));
}

// Calls f on every configuration of a binary model, first variable most significant.
template <class F>
void for_each_config(int n, F&& f) {
  std::vector<int> x(static_cast<std::size_t>(n), 0);
  for (unsigned long m = 0; m < (1UL << n); ++m) {
    for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = static_cast<int>((m >> (n - 1 - i)) & 1UL);
    f(x);
  }
}

inline SignedGraph signed_graph(int n, const std::vector<std::pair<int, int>>& edges, const std::string& signs) {
  SignedGraph g{n, {}};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u > v) std::swap(u, v);
    g.edges.push_back({u, v, signs[i] == '+' ? Sign::associative : Sign::repulsive, static_cast<int>(i),
                       signs[i] == '+' ? 1.0 : -1.0});
  }
  return g;
}

inline SignedTopology topology(int n, const std::vector<std::pair<int, int>>& edges, const std::string& signs) {
  SignedTopology t{n, edges, {}};
  for (char c : signs) t.signs.push_back(c == '+' ? Sign::associative : Sign::repulsive);
  return t;
}

}  // namespace mapwss::test
