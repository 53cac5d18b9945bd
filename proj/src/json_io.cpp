#include "mapwss/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace mapwss {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

void only_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) fail("unknown key '" + key + "' in " + where);
  }
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + " lacks '" + key + "'");
  return *it;
}

std::vector<double> numbers(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) fail(where + " must be an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::string> names(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) fail(where + " must be an array of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Json assignment_json(const Assignment& a, const std::vector<std::string>& vars) {
  Json out = Json::object();
  for (auto [v, l] : a) out[vars[static_cast<std::size_t>(v)]] = l;
  return out;
}

Json node_json(const NmrfNode& n, const std::vector<std::string>& vars) {
  return Json{{"id", n.id}, {"group", n.group}, {"assignment", assignment_json(n.assignment, vars)}, {"weight", n.weight}};
}

std::string assignment_text(const Assignment& a, const std::vector<std::string>& vars) {
  std::string s;
  for (auto [v, l] : a) {
    if (!s.empty()) s += ',';
    s += vars[static_cast<std::size_t>(v)] + "=" + std::to_string(l);
  }
  return s;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }
}

RawModel raw_model_from_json(const Json& j) {
  only_keys(j, {"variables", "potentials"}, "model");
  RawModel raw;
  const Json& vars = field(j, "variables", "model");
  if (!vars.is_array()) fail("'variables' must be an array");
  for (const auto& v : vars) {
    only_keys(v, {"name", "card"}, "variable");
    const Json& name = field(v, "name", "variable");
    const Json& card = field(v, "card", "variable");
    if (!name.is_string()) fail("variable name must be a string");
    if (!card.is_number_integer()) fail("variable card must be an integer");
    raw.variables.push_back({name.get<std::string>(), card.get<int>()});
  }
  if (auto it = j.find("potentials"); it != j.end()) {
    if (!it->is_array()) fail("'potentials' must be an array");
    for (const auto& p : *it) {
      only_keys(p, {"scope", "table"}, "potential");
      raw.potentials.push_back({names(field(p, "scope", "potential"), "scope"),
                                numbers(field(p, "table", "potential"), "table")});
    }
  }
  return raw;
}

Model model_from_json(const Json& j) { return validate_model(raw_model_from_json(j)); }

Json model_to_json(const Model& model) {
  Json vars = Json::array();
  for (const auto& v : model.variables()) vars.push_back({{"name", v.name}, {"card", v.card}});
  Json pots = Json::array();
  for (const auto& p : model.potentials()) {
    Json scope = Json::array();
    for (int v : p.scope) scope.push_back(model.name(v));
    pots.push_back({{"scope", scope}, {"table", p.table}});
  }
  return {{"variables", vars}, {"potentials", pots}};
}

Json nmrf_to_json(const Nmrf& nmrf) {
  const auto& vars = nmrf.variable_names;
  Json groups = Json::array();
  for (std::size_t g = 0; g < nmrf.groups.size(); ++g) {
    Json scope = Json::array();
    for (int v : nmrf.groups[g].scope) scope.push_back(vars[static_cast<std::size_t>(v)]);
    groups.push_back({{"id", g}, {"scope", scope}});
  }
  Json nodes = Json::array();
  for (const auto& n : nmrf.nodes) nodes.push_back(node_json(n, vars));
  Json edges = Json::array();
  for (auto [u, v] : nmrf.adjacency.edges()) {
    edges.push_back({nmrf.nodes[static_cast<std::size_t>(u)].id, nmrf.nodes[static_cast<std::size_t>(v)].id});
  }
  Json pruned = Json::array();
  for (const auto& n : nmrf.pruned) pruned.push_back(node_json(n, vars));
  return {{"variables", vars}, {"groups", groups}, {"nodes", nodes}, {"edges", edges},
          {"constants", nmrf.constant}, {"pruned", pruned}};
}

Nmrf nmrf_from_json(const Json& j) {
  only_keys(j, {"variables", "groups", "nodes", "edges", "constants", "pruned"}, "nmrf");
  Nmrf out;
  std::map<std::string, int> var_index;
  auto var_of = [&](const std::string& name) {
    auto [it, fresh] = var_index.emplace(name, static_cast<int>(out.variable_names.size()));
    if (fresh) out.variable_names.push_back(name);
    return it->second;
  };
  if (auto it = j.find("variables"); it != j.end()) {
    for (const auto& name : names(*it, "variables")) var_of(name);
  }
  auto read_node = [&](const Json& n) {
    only_keys(n, {"id", "group", "assignment", "weight"}, "node");
    NmrfNode node;
    node.id = field(n, "id", "node").get<int>();
    node.group = field(n, "group", "node").get<int>();
    node.weight = field(n, "weight", "node").get<double>();
    const Json& a = field(n, "assignment", "node");
    if (!a.is_object()) fail("node assignment must be an object");
    for (const auto& [name, label] : a.items()) node.assignment.emplace_back(var_of(name), label.get<int>());
    std::sort(node.assignment.begin(), node.assignment.end());
    return node;
  };
  try {
    for (const auto& n : field(j, "nodes", "nmrf")) out.nodes.push_back(read_node(n));
    if (auto it = j.find("pruned"); it != j.end()) {
      for (const auto& n : *it) out.pruned.push_back(read_node(n));
    }
    out.constant = j.value("constants", 0.0);
  } catch (const nlohmann::json::exception& e) {
    fail(e.what());
  }

  int max_group = -1;
  for (const auto& n : out.nodes) max_group = std::max(max_group, n.group);
  for (const auto& n : out.pruned) max_group = std::max(max_group, n.group);
  out.groups.resize(static_cast<std::size_t>(max_group + 1));
  if (auto it = j.find("groups"); it != j.end()) {
    for (const auto& g : *it) {
      only_keys(g, {"id", "scope"}, "group");
      const int id = field(g, "id", "group").get<int>();
      if (id < 0) fail("negative group id");
      if (id >= static_cast<int>(out.groups.size())) out.groups.resize(static_cast<std::size_t>(id + 1));
      std::vector<int> scope;
      for (const auto& name : names(field(g, "scope", "group"), "group scope")) scope.push_back(var_of(name));
      std::sort(scope.begin(), scope.end());
      out.groups[static_cast<std::size_t>(id)].scope = std::move(scope);
    }
  }
  auto fill_scope = [&](const NmrfNode& n) {
    if (n.group < 0) fail("negative group id");
    auto& scope = out.groups[static_cast<std::size_t>(n.group)].scope;
    if (scope.empty()) {
      for (auto [v, l] : n.assignment) scope.push_back(v);
    }
  };
  for (const auto& n : out.nodes) fill_scope(n);
  for (const auto& n : out.pruned) fill_scope(n);

  std::map<int, int> local;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    if (!local.emplace(out.nodes[i].id, static_cast<int>(i)).second) fail("duplicate node id");
  }
  std::vector<std::pair<int, int>> edges;
  const Json& e = field(j, "edges", "nmrf");
  if (!e.is_array()) fail("'edges' must be an array");
  for (const auto& pair : e) {
    if (!pair.is_array() || pair.size() != 2) fail("each edge must be a pair of node ids");
    auto a = local.find(pair[0].get<int>());
    auto b = local.find(pair[1].get<int>());
    if (a == local.end() || b == local.end()) fail("edge refers to an unknown node");
    edges.emplace_back(a->second, b->second);
  }
  out.adjacency = Graph(static_cast<int>(out.nodes.size()), edges);
  return out;
}

std::string nmrf_to_dot(const Nmrf& nmrf) {
  std::ostringstream os;
  os << "graph nmrf {\n";
  for (const auto& n : nmrf.nodes) {
    os << "  n" << n.id << " [label=\"" << n.group << ":" << assignment_text(n.assignment, nmrf.variable_names) << ":"
       << n.weight << "\"];\n";
  }
  for (auto [u, v] : nmrf.adjacency.edges()) {
    os << "  n" << nmrf.nodes[static_cast<std::size_t>(u)].id << " -- n" << nmrf.nodes[static_cast<std::size_t>(v)].id
       << ";\n";
  }
  os << "}\n";
  return os.str();
}

Json cycle_to_json(const SignedCycle& cycle, const Model& model) {
  Json vertices = Json::array();
  for (int v : cycle.vertices) vertices.push_back(model.name(v));
  Json signs = Json::array();
  for (Sign s : cycle.signs) signs.push_back(std::string(to_string(s)));
  return {{"vertices", vertices}, {"signs", signs}};
}

Json report_to_json(const TractabilityReport& report, const Model& model) {
  auto name_list = [&](const std::vector<int>& vs) {
    Json out = Json::array();
    for (int v : vs) out.push_back(model.name(v));
    return out;
  };
  Json blocks = Json::array();
  for (const auto& cb : report.blocks) {
    Json b{{"vertices", name_list(cb.block.vertices)}, {"class", std::string(class_name(cb.cls))}};
    if (const auto* br = std::get_if<BrClass>(&cb.cls)) {
      b["params"] = {{"V1", name_list(br->partition.first)}, {"V2", name_list(br->partition.second)}};
    } else if (const auto* t = std::get_if<TmnClass>(&cb.cls)) {
      b["params"] = {{"s", model.name(t->s)}, {"t", model.name(t->t)}, {"r", name_list(t->repulsive_apexes)},
                     {"a", name_list(t->associative_apexes)}, {"m", t->m()}, {"n", t->n()}};
    } else if (const auto* u = std::get_if<UnClass>(&cb.cls)) {
      b["params"] = {{"s", model.name(u->s)}, {"t", model.name(u->t)}, {"v", name_list(u->apexes)}, {"n", u->n()}};
    } else {
      b["params"] = Json::object();
      b["witness"] = cycle_to_json(std::get<IntractableClass>(cb.cls).witness, model);
    }
    blocks.push_back(std::move(b));
  }
  Json plan = Json::array();
  for (const auto& pe : report.plan) {
    plan.push_back({{"edge", {model.name(pe.u), model.name(pe.v)}}, {"form", std::string(to_string(pe.form))}});
  }
  return {{"tractable", report.tractable}, {"cut_vertices", name_list(report.cut_vertices)}, {"blocks", blocks},
          {"enode_plan", plan}};
}

Json solution_to_json(const MapSolution& solution, const Model& model) {
  Json a = Json::object();
  for (int v = 0; v < model.num_variables(); ++v) a[model.name(v)] = solution.assignment[static_cast<std::size_t>(v)];
  return {{"assignment", a}, {"objective", solution.objective}, {"method", solution.method}};
}

Json verdict_to_json(const PerfectionVerdict& verdict, const Nmrf& nmrf) {
  Json witness = Json::array();
  for (int v : verdict.witness) witness.push_back(nmrf.nodes[static_cast<std::size_t>(v)].id);
  return {{"perfect", verdict.perfect}, {"kind", std::string(to_string(verdict.kind))}, {"witness", witness}};
}

NamedPotential potential_from_json(const Json& j) {
  only_keys(j, {"scope", "table"}, "potential");
  NamedPotential out{names(field(j, "scope", "potential"), "scope"),
                     HighOrderPotential::from_table(numbers(field(j, "table", "potential"), "table"))};
  if (static_cast<int>(out.scope.size()) != out.psi.k) {
    throw Error(ErrorCode::TableSizeMismatch, "table has 2^" + std::to_string(out.psi.k) + " entries but scope has " +
                                                  std::to_string(out.scope.size()) + " variables");
  }
  if (std::set<std::string>(out.scope.begin(), out.scope.end()).size() != out.scope.size()) {
    throw Error(ErrorCode::DuplicateVariable, "scope repeats a variable");
  }
  return out;
}

Json representation_to_json(const IndicatorRepresentation& rep, const std::vector<std::string>& scope) {
  auto subset = [&](Subset y) {
    std::vector<std::string> out;
    for (int i = 0; i < rep.k; ++i) {
      if (y >> i & 1U) out.push_back(scope[static_cast<std::size_t>(i)]);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto weights = [&](const std::map<Subset, double>& m) {
    Json out = Json::array();
    for (auto [y, w] : m) out.push_back({{"subset", subset(y)}, {"weight", w}});
    return out;
  };
  return {{"constant", rep.constant}, {"zero_weights", weights(rep.zero_weights)},
          {"one_weights", weights(rep.one_weights)}};
}

Json projection_to_json(const Projection& p, const std::vector<std::string>& scope) {
  Json rest = Json::object();
  std::size_t r = 0;
  for (std::size_t v = 0; v < scope.size(); ++v) {
    if (static_cast<int>(v) == p.i || static_cast<int>(v) == p.j) continue;
    rest[scope[v]] = p.rest[r++];
  }
  return {{"i", scope[static_cast<std::size_t>(p.i)]}, {"j", scope[static_cast<std::size_t>(p.j)]}, {"rest", rest},
          {"supermodularity", p.value}};
}

}  // namespace mapwss
