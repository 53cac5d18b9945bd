#include "mapwss/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

namespace mapwss {

namespace {

double entry(Rng& rng, const TableOptions& opt) {
  if (opt.integer) return static_cast<double>(std::uniform_int_distribution<int>(-5, 5)(rng));
  return std::uniform_real_distribution<double>(-opt.magnitude, opt.magnitude)(rng);
}

bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

struct Builder {
  SignedTopology topo;
  int add_vertex() { return topo.num_vertices++; }
  void edge(int u, int v, Sign s) {
    topo.edges.emplace_back(u, v);
    topo.signs.push_back(s);
  }
};

constexpr Sign kA = Sign::associative;
constexpr Sign kR = Sign::repulsive;

}  // namespace

EdgeTable random_edge_table(Rng& rng, Sign sign, const TableOptions& opt) {
  EdgeTable t{entry(rng, opt), entry(rng, opt), entry(rng, opt), entry(rng, opt)};
  const double floor = opt.integer ? 1.0 : 0.1;
  const double a = associativity(t);
  const double want = sign == kA ? a : -a;
  if (want < floor) {
    const double shift = floor - want + (opt.integer ? uniform(rng, 0, 3) : std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    // Moving t00 changes the associativity one-for-one.
    t[0] += sign == kA ? shift : -shift;
  }
  return t;
}

Model model_on(const SignedTopology& topo, Rng& rng, const TableOptions& opt) {
  std::vector<Variable> vars;
  for (int v = 0; v < topo.num_vertices; ++v) vars.push_back({"x" + std::to_string(v), 2});
  std::vector<Potential> pots;
  for (int v = 0; v < topo.num_vertices; ++v) pots.push_back({{v}, {entry(rng, opt), entry(rng, opt)}});
  for (std::size_t i = 0; i < topo.edges.size(); ++i) {
    const auto t = random_edge_table(rng, topo.signs[i], opt);
    pots.push_back({{topo.edges[i].first, topo.edges[i].second}, {t.begin(), t.end()}});
  }
  return Model(std::move(vars), std::move(pots));
}

SignedTopology random_tractable_topology(Rng& rng, int max_vertices) {
  Builder b;
  b.add_vertex();
  while (b.topo.num_vertices < max_vertices) {
    const int room = max_vertices - b.topo.num_vertices;
    const int anchor = uniform(rng, 0, b.topo.num_vertices - 1);
    const int kind = uniform(rng, 0, 3);
    if (kind == 0 || room < 2) {
      b.edge(anchor, b.add_vertex(), coin(rng) ? kA : kR);
    } else if (kind == 1) {
      // Balanced piece: random 2-colouring, repulsive exactly across.
      const int extra = uniform(rng, 2, std::min(room, 4));
      std::vector<int> vs{anchor};
      for (int i = 0; i < extra; ++i) vs.push_back(b.add_vertex());
      std::vector<int> colour(vs.size());
      for (auto& c : colour) c = coin(rng) ? 1 : 0;
      auto sign = [&](std::size_t i, std::size_t j) { return colour[i] == colour[j] ? kA : kR; };
      for (std::size_t i = 0; i < vs.size(); ++i) b.edge(vs[i], vs[(i + 1) % vs.size()], sign(i, (i + 1) % vs.size()));
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 2; j < vs.size(); ++j) {
          if ((i == 0 && j + 1 == vs.size()) || !std::bernoulli_distribution(0.3)(rng)) continue;
          b.edge(vs[i], vs[j], sign(i, j));
        }
      }
    } else {
      // T_{m,n} (kind 2) or U_n (kind 3) with the anchor as one base vertex.
      const int apexes = uniform(rng, 1, std::min(room - 1, 4));
      const int s = anchor;
      const int t = b.add_vertex();
      b.edge(s, t, kind == 2 ? kR : kA);
      for (int i = 0; i < apexes; ++i) {
        const int a = b.add_vertex();
        if (kind == 2) {
          const Sign both = coin(rng) ? kA : kR;
          b.edge(s, a, both);
          b.edge(a, t, both);
        } else {
          const bool flip = coin(rng);
          b.edge(s, a, flip ? kA : kR);
          b.edge(a, t, flip ? kR : kA);
        }
      }
    }
  }
  std::vector<int> perm(static_cast<std::size_t>(b.topo.num_vertices));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (auto& [u, v] : b.topo.edges) {
    u = perm[static_cast<std::size_t>(u)];
    v = perm[static_cast<std::size_t>(v)];
  }
  return b.topo;
}

Model random_tractable_model(Rng& rng, int max_vertices, const TableOptions& opt) {
  return model_on(random_tractable_topology(rng, max_vertices), rng, opt);
}

SignedTopology random_signed_topology(Rng& rng, int n, double edge_probability) {
  SignedTopology topo{n, {}, {}};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!std::bernoulli_distribution(edge_probability)(rng)) continue;
      topo.edges.emplace_back(u, v);
      topo.signs.push_back(coin(rng) ? kA : kR);
    }
  }
  return topo;
}

SignedTopology random_br_topology(Rng& rng, int n, double edge_probability) {
  std::vector<int> colour(static_cast<std::size_t>(n));
  for (auto& c : colour) c = coin(rng) ? 1 : 0;
  SignedTopology topo{n, {}, {}};
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!std::bernoulli_distribution(edge_probability)(rng)) continue;
      topo.edges.emplace_back(u, v);
      topo.signs.push_back(colour[static_cast<std::size_t>(u)] == colour[static_cast<std::size_t>(v)] ? kA : kR);
    }
  }
  return topo;
}

SignedTopology example_br_topology() {
  // V1 = {0, 1, 2, 3}, V2 = {4, 5, 6, 7}.
  SignedTopology topo{8, {}, {}};
  auto add = [&](int u, int v) {
    topo.edges.emplace_back(u, v);
    topo.signs.push_back((u < 4) == (v < 4) ? kA : kR);
  };
  add(0, 1); add(1, 2); add(2, 3); add(0, 2);
  add(4, 5); add(5, 6); add(6, 7);
  add(0, 4); add(1, 5); add(3, 6); add(2, 7); add(3, 7);
  return topo;
}

SignedTopology block_chain_topology(int edges) {
  Builder b;
  int cut = b.add_vertex();
  int kind = 0;
  while (static_cast<int>(b.topo.edges.size()) < edges) {
    const int p = b.add_vertex();
    const int q = b.add_vertex();
    switch (kind++ % 4) {
      case 0: b.edge(cut, p, kA); b.edge(p, q, kA); b.edge(cut, q, kA); break;
      case 1: b.edge(cut, p, kR); b.edge(p, q, kR); b.edge(cut, q, kR); break;
      case 2: b.edge(cut, p, kA); b.edge(p, q, kR); b.edge(cut, q, kA); break;
      default: {
        const int r = b.add_vertex();
        b.edge(cut, p, kR); b.edge(p, q, kR); b.edge(q, r, kA); b.edge(cut, r, kA);
        break;
      }
    }
    cut = q;
  }
  return b.topo;
}

HighOrderPotential random_potential(Rng& rng, int k, double magnitude) {
  std::uniform_real_distribution<double> d(-magnitude, magnitude);
  std::vector<double> table(std::size_t{1} << k);
  for (auto& x : table) x = d(rng);
  return HighOrderPotential::from_table(std::move(table));
}

HighOrderPotential random_supermodular(Rng& rng, int k) {
  if (k <= 3) {
    while (true) {
      auto psi = random_potential(rng, k);
      if (is_supermodular(psi)) return psi;
    }
  }
  // Rejection is hopeless from order 4 on.  Adding c * sum of x_i x_j raises
  // every projection by c, so lift the worst one to a small random margin.
  auto psi = random_potential(rng, k);
  double worst = 0.0;
  for (const auto& p : projections(psi)) worst = std::min(worst, p.value);
  const double c = -worst + std::uniform_real_distribution<double>(0.0, 0.5)(rng);
  for (std::uint32_t x = 0; x < psi.table.size(); ++x) {
    const int ones = std::popcount(x);
    psi.table[x] += c * ones * (ones - 1) / 2;
  }
  return psi;
}

HighOrderPotential random_non_supermodular(Rng& rng, int k) {
  while (true) {
    auto psi = random_potential(rng, k);
    if (!is_supermodular(psi)) return psi;
  }
}

WeightedGraph random_weighted_graph(Rng& rng, int n, double edge_probability) {
  WeightedGraph g{Graph(n), {}};
  std::uniform_real_distribution<double> w(0.0, 10.0);
  for (int v = 0; v < n; ++v) g.weights.push_back(coin(rng) ? std::round(w(rng)) : w(rng));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (std::bernoulli_distribution(edge_probability)(rng)) g.graph.add_edge(u, v);
    }
  }
  return g;
}

WeightedGraph random_bipartite_graph(Rng& rng, int n, double edge_probability, std::vector<int>& side) {
  side.assign(static_cast<std::size_t>(n), 0);
  for (auto& s : side) s = coin(rng) ? 1 : 0;
  WeightedGraph g{Graph(n), {}};
  std::uniform_real_distribution<double> w(0.0, 10.0);
  for (int v = 0; v < n; ++v) g.weights.push_back(coin(rng) ? std::round(w(rng)) : w(rng));
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (side[static_cast<std::size_t>(u)] != side[static_cast<std::size_t>(v)] &&
          std::bernoulli_distribution(edge_probability)(rng)) {
        g.graph.add_edge(u, v);
      }
    }
  }
  return g;
}

}  // namespace mapwss
