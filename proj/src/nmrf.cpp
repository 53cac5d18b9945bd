#include "mapwss/nmrf.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mapwss {

namespace {

// Adjacency by the inconsistency rule: bucket nodes by variable, connect
// every pair that carries different labels for it.
Graph conflict_graph(const std::vector<NmrfNode>& nodes, int num_variables) {
  std::vector<std::vector<std::pair<int, int>>> buckets(static_cast<std::size_t>(num_variables));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (auto [var, label] : nodes[i].assignment) {
      buckets[static_cast<std::size_t>(var)].emplace_back(label, static_cast<int>(i));
    }
  }
  std::vector<std::pair<int, int>> edges;
  for (auto& bucket : buckets) {
    std::sort(bucket.begin(), bucket.end());
    for (std::size_t a = 0; a < bucket.size(); ++a) {
      for (std::size_t b = a + 1; b < bucket.size(); ++b) {
        if (bucket[a].first != bucket[b].first) edges.emplace_back(bucket[a].second, bucket[b].second);
      }
    }
  }
  return Graph(static_cast<int>(nodes.size()), edges);
}

std::vector<std::string> names_of(const Model& model) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(model.num_variables()));
  for (const auto& v : model.variables()) names.push_back(v.name);
  return names;
}

// Nodes of every group before adjacency; ids are positions.
Nmrf assemble_nodes(const Model& model) {
  Nmrf out;
  out.variable_names = names_of(model);
  const int n = model.num_variables();

  std::vector<const Potential*> singleton(static_cast<std::size_t>(n), nullptr);
  std::vector<const Potential*> higher;
  for (const auto& p : model.potentials()) {
    if (p.scope.size() == 1) {
      singleton[static_cast<std::size_t>(p.scope[0])] = &p;
    } else {
      higher.push_back(&p);
    }
  }

  std::vector<int> labels;
  std::vector<int> local;
  auto add_group = [&](std::vector<int> sorted_scope, const Potential* pot) {
    const int g = static_cast<int>(out.groups.size());
    const std::size_t count = table_size(model, sorted_scope);
    std::vector<double> values(count, 0.0);
    labels.assign(sorted_scope.size(), 0);
    for (std::size_t off = 0; off < count; ++off) {
      if (pot) {
        local.resize(pot->scope.size());
        for (std::size_t i = 0; i < pot->scope.size(); ++i) {
          auto pos = std::lower_bound(sorted_scope.begin(), sorted_scope.end(), pot->scope[i]) - sorted_scope.begin();
          local[i] = labels[static_cast<std::size_t>(pos)];
        }
        values[off] = pot->table[table_offset(model, pot->scope, local)];
      }
      // advance labels in row-major order over the sorted scope
      for (std::size_t i = sorted_scope.size(); i-- > 0;) {
        if (++labels[i] < model.card(sorted_scope[i])) break;
        labels[i] = 0;
      }
    }
    const double lowest = *std::min_element(values.begin(), values.end());
    out.constant += lowest;
    labels.assign(sorted_scope.size(), 0);
    for (std::size_t off = 0; off < count; ++off) {
      NmrfNode node;
      node.id = static_cast<int>(out.nodes.size());
      node.group = g;
      node.weight = values[off] - lowest;
      for (std::size_t i = 0; i < sorted_scope.size(); ++i) node.assignment.emplace_back(sorted_scope[i], labels[i]);
      out.nodes.push_back(std::move(node));
      for (std::size_t i = sorted_scope.size(); i-- > 0;) {
        if (++labels[i] < model.card(sorted_scope[i])) break;
        labels[i] = 0;
      }
    }
    out.groups.push_back({std::move(sorted_scope)});
  };

  for (int v = 0; v < n; ++v) add_group({v}, singleton[static_cast<std::size_t>(v)]);
  for (const Potential* p : higher) {
    std::vector<int> scope = p->scope;
    std::sort(scope.begin(), scope.end());
    add_group(std::move(scope), p);
  }
  return out;
}

Nmrf keep_if(const Nmrf& nmrf, const std::vector<bool>& keep, bool record_pruned) {
  Nmrf out;
  out.variable_names = nmrf.variable_names;
  out.groups = nmrf.groups;
  out.constant = nmrf.constant;
  out.pruned = nmrf.pruned;
  std::vector<int> kept;
  for (std::size_t i = 0; i < nmrf.nodes.size(); ++i) {
    if (keep[i]) {
      kept.push_back(static_cast<int>(i));
      out.nodes.push_back(nmrf.nodes[i]);
    } else if (record_pruned) {
      out.pruned.push_back(nmrf.nodes[i]);
    }
  }
  std::sort(out.pruned.begin(), out.pruned.end(), [](const NmrfNode& a, const NmrfNode& b) { return a.id < b.id; });
  out.adjacency = nmrf.adjacency.induced(kept);
  return out;
}

bool consistent_with(const NmrfNode& node, std::span<const int> clamps) {
  for (auto [var, label] : node.assignment) {
    const int c = clamps[static_cast<std::size_t>(var)];
    if (c >= 0 && c != label) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(EnodeForm f) {
  switch (f) {
    case EnodeForm::f00: return "00";
    case EnodeForm::f01: return "01";
    case EnodeForm::f10: return "10";
    case EnodeForm::f11: return "11";
  }
  return "??";
}

EnodeForm parse_form(std::string_view text) {
  if (text == "00") return EnodeForm::f00;
  if (text == "01") return EnodeForm::f01;
  if (text == "10") return EnodeForm::f10;
  if (text == "11") return EnodeForm::f11;
  throw Error(ErrorCode::ParseError, "enode form must be one of 00, 01, 10, 11");
}

EdgeReparam reparameterize_edge(const EdgeTable& table, EnodeForm target, double eps) {
  const double a = associativity(table);
  if (std::abs(a) <= eps) throw Error(ErrorCode::ZeroAssociativity, "edge associativity is within eps of 0");
  const Sign sign = a > 0 ? Sign::associative : Sign::repulsive;
  if (form_sign(target) != sign) {
    throw Error(ErrorCode::SignMismatch, std::string("form ") + std::string(to_string(target)) +
                                             " cannot represent a " + std::string(to_string(sign)) + " edge");
  }
  EdgeReparam r;
  r.form = target;
  r.weight = std::abs(a);
  // The residual after removing the surviving entry has zero associativity,
  // hence splits exactly into row and column terms.
  EdgeTable residual = table;
  residual[static_cast<std::size_t>(target)] -= r.weight;
  r.row_delta = {residual[0], residual[2]};
  r.col_delta = {0.0, residual[1] - residual[0]};
  r.constant = 0.0;
  return r;
}

bool nodes_conflict(const NmrfNode& a, const NmrfNode& b) {
  if (a.group == b.group) return a.id != b.id;
  auto ia = a.assignment.begin();
  auto ib = b.assignment.begin();
  while (ia != a.assignment.end() && ib != b.assignment.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      if (ia->second != ib->second) return true;
      ++ia;
      ++ib;
    }
  }
  return false;
}

Nmrf build_nmrf(const Model& model) {
  Nmrf out = assemble_nodes(model);
  out.adjacency = conflict_graph(out.nodes, model.num_variables());
  return out;
}

Nmrf prune(const Nmrf& nmrf, double eps) {
  std::vector<bool> keep(nmrf.nodes.size());
  for (std::size_t i = 0; i < nmrf.nodes.size(); ++i) keep[i] = nmrf.nodes[i].weight > eps;
  return keep_if(nmrf, keep, true);
}

Nmrf condition(const Nmrf& nmrf, std::span<const int> clamps) {
  if (static_cast<int>(clamps.size()) != nmrf.num_variables()) {
    throw Error(ErrorCode::InvalidArgument, "clamp vector length differs from variable count");
  }
  std::vector<bool> keep(nmrf.nodes.size());
  for (std::size_t i = 0; i < nmrf.nodes.size(); ++i) keep[i] = consistent_with(nmrf.nodes[i], clamps);
  Nmrf out = keep_if(nmrf, keep, false);
  std::erase_if(out.pruned, [&](const NmrfNode& n) { return !consistent_with(n, clamps); });
  return out;
}

WeightedGraph weighted_graph(const Nmrf& nmrf) {
  WeightedGraph wg{nmrf.adjacency, {}};
  wg.weights.reserve(nmrf.nodes.size());
  for (const auto& n : nmrf.nodes) wg.weights.push_back(n.weight);
  return wg;
}

EnodePlan default_enode_plan(const SignedGraph& graph) {
  EnodePlan plan;
  plan.reserve(graph.edges.size());
  for (const auto& e : graph.edges) {
    plan.push_back({e.u, e.v, e.potential, e.sign == Sign::associative ? EnodeForm::f00 : EnodeForm::f01});
  }
  return plan;
}

Model apply_enode_plan(const Model& model, const EnodePlan& plan, double eps) {
  require_binary_pairwise(model);
  std::vector<Potential> pots = model.potentials();
  std::vector<std::array<double, 2>> unary(static_cast<std::size_t>(model.num_variables()), {0.0, 0.0});
  std::vector<bool> planned(pots.size(), false);

  auto write_back = [](Potential& pot, const EdgeTable& oriented) {
    if (pot.scope[0] < pot.scope[1]) {
      pot.table = {oriented[0], oriented[1], oriented[2], oriented[3]};
    } else {
      pot.table = {oriented[0], oriented[2], oriented[1], oriented[3]};
    }
  };

  for (const auto& pe : plan) {
    if (pe.potential < 0 || pe.potential >= static_cast<int>(pots.size()) ||
        pots[static_cast<std::size_t>(pe.potential)].scope.size() != 2) {
      throw Error(ErrorCode::InvalidArgument, "plan entry does not name a pairwise potential");
    }
    auto& pot = pots[static_cast<std::size_t>(pe.potential)];
    const auto r = reparameterize_edge(oriented_table(pot), pe.form, eps);
    EdgeTable rewritten{0.0, 0.0, 0.0, 0.0};
    rewritten[static_cast<std::size_t>(pe.form)] = r.weight;
    write_back(pot, rewritten);
    auto& lo = unary[static_cast<std::size_t>(pe.u)];
    auto& hi = unary[static_cast<std::size_t>(pe.v)];
    lo[0] += r.row_delta[0];
    lo[1] += r.row_delta[1];
    hi[0] += r.col_delta[0];
    hi[1] += r.col_delta[1];
    planned[static_cast<std::size_t>(pe.potential)] = true;
  }

  for (std::size_t i = 0; i < pots.size(); ++i) {
    auto& pot = pots[i];
    if (planned[i] || pot.scope.size() != 2) continue;
    const EdgeTable t = oriented_table(pot);
    if (std::abs(associativity(t)) > eps) continue;
    const auto [lo_v, hi_v] = std::minmax(pot.scope[0], pot.scope[1]);
    auto& lo = unary[static_cast<std::size_t>(lo_v)];
    auto& hi = unary[static_cast<std::size_t>(hi_v)];
    lo[0] += t[0];
    lo[1] += t[2];
    hi[1] += t[1] - t[0];
    write_back(pot, {0.0, 0.0, 0.0, associativity(t)});
  }

  for (int v = 0; v < model.num_variables(); ++v) {
    const auto& u = unary[static_cast<std::size_t>(v)];
    if (u[0] != 0.0 || u[1] != 0.0) pots.push_back({{v}, {u[0], u[1]}});
  }
  return Model(model.variables(), std::move(pots));
}

CompiledNmrf compile_binary_pairwise(const Model& model, const EnodePlan& plan, double eps) {
  Model rep = apply_enode_plan(model, plan, eps);
  Nmrf full = assemble_nodes(rep);
  // Adjacency is only needed among survivors.
  Nmrf pruned;
  pruned.variable_names = std::move(full.variable_names);
  pruned.groups = std::move(full.groups);
  pruned.constant = full.constant;
  for (auto& node : full.nodes) {
    if (node.weight > eps) {
      pruned.nodes.push_back(std::move(node));
    } else {
      pruned.pruned.push_back(std::move(node));
    }
  }
  pruned.adjacency = conflict_graph(pruned.nodes, rep.num_variables());
  return {std::move(rep), std::move(pruned)};
}

Nmrf envelope_nmrf(const Model& model, const EnodePlan& plan) {
  Nmrf out;
  out.variable_names = names_of(model);
  for (int v = 0; v < model.num_variables(); ++v) {
    const int g = static_cast<int>(out.groups.size());
    out.groups.push_back({{v}});
    for (int l = 0; l < model.card(v); ++l) {
      out.nodes.push_back({static_cast<int>(out.nodes.size()), g, {{v, l}}, 0.0});
    }
  }
  for (const auto& pe : plan) {
    const int g = static_cast<int>(out.groups.size());
    out.groups.push_back({{pe.u, pe.v}});
    out.nodes.push_back(
        {static_cast<int>(out.nodes.size()), g, {{pe.u, lower_label(pe.form)}, {pe.v, higher_label(pe.form)}}, 1.0});
  }
  out.adjacency = conflict_graph(out.nodes, model.num_variables());
  return out;
}

const NmrfNode* find_node(const Nmrf& nmrf, std::span<const std::pair<int, int>> assignment) {
  for (const auto& n : nmrf.nodes) {
    if (std::equal(n.assignment.begin(), n.assignment.end(), assignment.begin(), assignment.end())) return &n;
  }
  return nullptr;
}

}  // namespace mapwss
