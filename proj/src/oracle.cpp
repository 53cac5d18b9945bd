#include "mapwss/oracle.hpp"

#include <cstdint>

namespace mapwss {

MapSolution brute_force_map(const Model& model) {
  const auto& vars = model.variables();
  double configurations = 1.0;
  for (const auto& v : vars) configurations *= v.card;
  if (configurations > kOracleMaxConfigurations) {
    throw Error(ErrorCode::TooLarge, "more than 2^20 configurations");
  }

  // Precomputed strides per potential so each evaluation is a dot product.
  struct Term {
    std::vector<int> scope;
    std::vector<std::size_t> stride;
    const std::vector<double>* table;
  };
  std::vector<Term> terms;
  for (const auto& p : model.potentials()) {
    Term t{p.scope, std::vector<std::size_t>(p.scope.size()), &p.table};
    std::size_t s = 1;
    for (std::size_t i = p.scope.size(); i-- > 0;) {
      t.stride[i] = s;
      s *= static_cast<std::size_t>(vars[static_cast<std::size_t>(p.scope[i])].card);
    }
    terms.push_back(std::move(t));
  }

  const std::size_t n = vars.size();
  std::vector<int> x(n, 0);
  MapSolution best{x, 0.0, "oracle"};
  bool have = false;
  while (true) {
    double value = 0.0;
    for (const auto& t : terms) {
      std::size_t off = 0;
      for (std::size_t i = 0; i < t.scope.size(); ++i) {
        off += t.stride[i] * static_cast<std::size_t>(x[static_cast<std::size_t>(t.scope[i])]);
      }
      value += (*t.table)[off];
    }
    if (!have || value > best.objective) {
      best.assignment = x;
      best.objective = value;
      have = true;
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++x[i] < vars[i].card) break;
      x[i] = 0;
      if (i == 0) return best;
    }
    if (n == 0) return best;
  }
}

namespace {

struct Enumerator {
  const WeightedGraph& g;
  std::vector<int> chosen;
  std::vector<int> blocked;  // count of chosen neighbours
  StableSetSolution best;
  bool have = false;

  void run(int v, double weight) {
    const int n = g.graph.size();
    if (v == n) {
      if (!have || weight > best.weight) {
        best.nodes = chosen;
        best.weight = weight;
        have = true;
      }
      return;
    }
    if (blocked[static_cast<std::size_t>(v)] == 0) {
      chosen.push_back(v);
      for (int u : g.graph.neighbors(v)) ++blocked[static_cast<std::size_t>(u)];
      run(v + 1, weight + g.weights[static_cast<std::size_t>(v)]);
      for (int u : g.graph.neighbors(v)) --blocked[static_cast<std::size_t>(u)];
      chosen.pop_back();
    }
    run(v + 1, weight);
  }
};

}  // namespace

StableSetSolution brute_force_mwss(const WeightedGraph& graph) {
  if (graph.graph.size() > kOracleMaxNodes) {
    throw Error(ErrorCode::TooLarge, "brute-force MWSS is capped at 24 nodes");
  }
  Enumerator e{graph, {}, std::vector<int>(static_cast<std::size_t>(graph.graph.size()), 0), {}, false};
  e.run(0, 0.0);
  return e.best;
}

}  // namespace mapwss
