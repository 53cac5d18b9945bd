#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "mapwss/nmrf.hpp"

using namespace mapwss;
using namespace mapwss::test;

TEST_CASE("build_nmrf on one edge with singletons") {
  const Model m = pairwise(2, {{0, 1, {1, 2, 3, 4}}}, {{0, 1}, {0, 2}});
  const Nmrf n = build_nmrf(m);
  CHECK(n.nodes.size() == 8);
  CHECK(n.groups.size() == 3);
  // The edge group is a K4.
  std::vector<int> edge_nodes;
  for (std::size_t i = 0; i < n.nodes.size(); ++i) {
    if (n.nodes[i].group == 2) edge_nodes.push_back(static_cast<int>(i));
  }
  REQUIRE(edge_nodes.size() == 4);
  for (int a : edge_nodes) {
    for (int b : edge_nodes) {
      if (a != b) CHECK(n.adjacency.adjacent(a, b));
    }
  }
  // (X1=0, X2=1) conflicts with snode X1=1.
  const Assignment e01{{0, 0}, {1, 1}};
  const Assignment s11{{0, 1}};
  const auto* a = find_node(n, e01);
  const auto* b = find_node(n, s11);
  REQUIRE(a);
  REQUIRE(b);
  CHECK(n.adjacency.adjacent(a->id, b->id));
  // Each group has minimum weight zero.
  for (std::size_t g = 0; g < n.groups.size(); ++g) {
    double lo = 1e9;
    for (const auto& node : n.nodes) {
      if (node.group == static_cast<int>(g)) lo = std::min(lo, node.weight);
    }
    CHECK(lo == 0.0);
  }
  CHECK(n.constant == doctest::Approx(1.0));
}

TEST_CASE("a lone 3-label variable is a K3") {
  const Model m({{"a", 3}}, {{{0}, {1, 2, 3}}});
  const Nmrf n = build_nmrf(m);
  CHECK(n.nodes.size() == 3);
  CHECK(n.adjacency.edge_count() == 3);
}

TEST_CASE("nodes_conflict") {
  NmrfNode a{0, 0, {{0, 0}}, 0};
  NmrfNode b{1, 0, {{0, 1}}, 0};
  NmrfNode c{2, 1, {{1, 1}}, 0};
  NmrfNode d{3, 2, {{0, 0}, {1, 0}}, 0};
  NmrfNode e{4, 3, {{1, 0}, {2, 1}}, 0};
  CHECK(nodes_conflict(a, b));
  CHECK_FALSE(nodes_conflict(a, c));
  CHECK_FALSE(nodes_conflict(d, e));
  CHECK(nodes_conflict(c, e));
}

TEST_CASE("reparameterize_edge") {
  auto r = reparameterize_edge({2, 0, 0, 2}, EnodeForm::f00);
  CHECK(r.weight == 4.0);
  r = reparameterize_edge({0, 1, 1, 0}, EnodeForm::f01);
  CHECK(r.weight == 2.0);
  try {
    reparameterize_edge({2, 0, 0, 2}, EnodeForm::f01);
    FAIL("expected SignMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SignMismatch);
  }
  try {
    reparameterize_edge({1, 1, 1, 1}, EnodeForm::f00);
    FAIL("expected ZeroAssociativity");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroAssociativity);
  }
}

TEST_CASE("reparameterize_edge reproduces every entry for every compatible form") {
  Rng rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const Sign s = trial % 2 ? Sign::associative : Sign::repulsive;
    const EdgeTable t = random_edge_table(rng, s);
    for (int f = 0; f < 4; ++f) {
      const auto form = static_cast<EnodeForm>(f);
      if (form_sign(form) != s) continue;
      const auto r = reparameterize_edge(t, form);
      for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
          const double rebuilt = (make_form(x, y) == form ? r.weight : 0.0) + r.row_delta[static_cast<std::size_t>(x)] +
                                 r.col_delta[static_cast<std::size_t>(y)] + r.constant;
          CHECK(rebuilt == doctest::Approx(t[static_cast<std::size_t>(2 * x + y)]).epsilon(1e-12));
        }
      }
      CHECK(r.weight == doctest::Approx(std::abs(associativity(t))));
    }
  }
}

TEST_CASE("prune keeps positive nodes and records the rest") {
  const Model m({{"a", 2}}, {{{0}, {0, 3}}});
  const Nmrf p = prune(build_nmrf(m));
  REQUIRE(p.nodes.size() == 1);
  CHECK(p.nodes[0].weight == 3.0);
  CHECK(p.pruned.size() == 1);

  const Model zero = pairwise(3, {{0, 1, {0, 0, 0, 0}}, {1, 2, {0, 0, 0, 0}}});
  CHECK(prune(build_nmrf(zero)).nodes.empty());
}

TEST_CASE("one enode per signed edge after the plan") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const Model m = model_on(random_signed_topology(rng, 6, 0.5), rng);
    const auto g = signed_view(m);
    const auto c = compile_binary_pairwise(m, default_enode_plan(g));
    std::vector<int> per_group(c.nmrf.groups.size(), 0);
    for (const auto& node : c.nmrf.nodes) ++per_group[static_cast<std::size_t>(node.group)];
    int enodes = 0;
    for (std::size_t gi = 0; gi < c.nmrf.groups.size(); ++gi) {
      if (c.nmrf.groups[gi].scope.size() == 2) {
        CHECK(per_group[gi] == 1);
        enodes += per_group[gi];
      } else {
        CHECK(per_group[gi] <= 1);
      }
    }
    CHECK(enodes == static_cast<int>(g.edges.size()));
  }
}

TEST_CASE("apply_enode_plan preserves energies, including flat edges") {
  Rng rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    Model m = model_on(random_signed_topology(rng, 5, 0.6), rng);
    // Add one exactly flat edge.
    auto pots = m.potentials();
    if (m.find_potential(std::vector<int>{0, 4}) < 0) pots.push_back({{4, 0}, {1.0, 3.0, -2.0, 0.0}});
    m = Model(m.variables(), pots);
    const Model r = apply_enode_plan(m, default_enode_plan(signed_view(m)));
    for_each_config(5, [&](const std::vector<int>& x) {
      CHECK(r.energy(x) == doctest::Approx(m.energy(x)).epsilon(1e-12));
    });
  }
}

TEST_CASE("reconstruction: consistent node weights plus constant equal the energy") {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Variable> vars{{"a", 2}, {"b", 3}, {"c", 2}};
    std::uniform_real_distribution<double> d(-2, 2);
    std::vector<Potential> pots;
    pots.push_back({{0, 1}, {d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)}});
    pots.push_back({{2, 1}, {d(rng), d(rng), d(rng), d(rng), d(rng), d(rng)}});
    pots.push_back({{1}, {d(rng), d(rng), d(rng)}});
    const Model m(vars, pots);
    const Nmrf n = build_nmrf(m);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 3; ++b) {
        for (int c = 0; c < 2; ++c) {
          const std::vector<int> x{a, b, c};
          double sum = n.constant;
          for (const auto& node : n.nodes) {
            if (std::all_of(node.assignment.begin(), node.assignment.end(),
                            [&](auto p) { return x[static_cast<std::size_t>(p.first)] == p.second; })) {
              sum += node.weight;
            }
          }
          CHECK(sum == doctest::Approx(m.energy(x)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("stable sets are exactly the consistent one-per-group selections") {
  const Model m = pairwise(3, {{0, 1, {1, 2, 3, 4}}, {1, 2, {4, 3, 2, 1}}});
  const Nmrf n = build_nmrf(m);
  const int size = static_cast<int>(n.nodes.size());
  REQUIRE(size == 14);
  for (int mask = 0; mask < (1 << size); mask += 7) {
    std::vector<int> chosen;
    for (int i = 0; i < size; ++i) {
      if (mask >> i & 1) chosen.push_back(i);
    }
    bool stable = true;
    for (int a : chosen) {
      for (int b : chosen) {
        if (a < b && n.adjacency.adjacent(a, b)) stable = false;
      }
    }
    bool consistent = true;
    for (int a : chosen) {
      for (int b : chosen) {
        if (a < b && nodes_conflict(n.nodes[static_cast<std::size_t>(a)], n.nodes[static_cast<std::size_t>(b)])) {
          consistent = false;
        }
      }
    }
    CHECK(stable == consistent);
  }
}

TEST_CASE("repulsive enodes only form triangles over MRF triangles") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    SignedTopology topo = random_signed_topology(rng, 6, 0.5);
    for (auto& s : topo.signs) s = Sign::repulsive;
    const Model m = model_on(topo, rng);
    const auto c = compile_binary_pairwise(m, default_enode_plan(signed_view(m)));
    std::vector<int> enodes;
    for (std::size_t i = 0; i < c.nmrf.nodes.size(); ++i) {
      if (c.nmrf.nodes[i].assignment.size() == 2) enodes.push_back(static_cast<int>(i));
    }
    const Graph g(static_cast<int>(topo.num_vertices), topo.edges);
    for (std::size_t a = 0; a < enodes.size(); ++a) {
      for (std::size_t b = a + 1; b < enodes.size(); ++b) {
        for (std::size_t d = b + 1; d < enodes.size(); ++d) {
          const auto& adj = c.nmrf.adjacency;
          if (!adj.adjacent(enodes[a], enodes[b]) || !adj.adjacent(enodes[b], enodes[d]) ||
              !adj.adjacent(enodes[a], enodes[d])) {
            continue;
          }
          std::vector<int> vs;
          for (int e : {enodes[a], enodes[b], enodes[d]}) {
            for (auto [v, l] : c.nmrf.nodes[static_cast<std::size_t>(e)].assignment) vs.push_back(v);
          }
          std::sort(vs.begin(), vs.end());
          vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
          REQUIRE(vs.size() == 3);
          CHECK((g.adjacent(vs[0], vs[1]) && g.adjacent(vs[1], vs[2]) && g.adjacent(vs[0], vs[2])));
        }
      }
    }
  }
}

TEST_CASE("condition removes inconsistent present and pruned nodes") {
  const Model m = pairwise(2, {{0, 1, {1, 0, 0, 1}}}, {{0, 1}, {1, 0}});
  const Nmrf p = prune(build_nmrf(m));
  const std::vector<int> clamps{1, -1};
  const Nmrf c = condition(p, clamps);
  for (const auto& node : c.nodes) {
    for (auto [v, l] : node.assignment) CHECK((v != 0 || l == 1));
  }
  for (const auto& node : c.pruned) {
    for (auto [v, l] : node.assignment) CHECK((v != 0 || l == 1));
  }
}

TEST_CASE("envelope NMRF holds both snodes and one enode per plan entry") {
  const Model m = pairwise(3, {{0, 1, {1, 0, 0, 1}}, {1, 2, {0, 1, 1, 0}}});
  const Nmrf n = envelope_nmrf(m, default_enode_plan(signed_view(m)));
  CHECK(n.nodes.size() == 8);
  const Assignment e{{1, 0}, {2, 1}};
  CHECK(find_node(n, e) != nullptr);
}
