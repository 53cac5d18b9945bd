#include "mapwss/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "mapwss/generators.hpp"
#include "mapwss/json_io.hpp"
#include "mapwss/oracle.hpp"
#include "mapwss/solve.hpp"

namespace mapwss {

namespace {

struct Options {
  std::string input;
  double eps = kDefaultEps;
  int max_nodes = -1;  // per-subcommand default when negative
  std::string method = "auto";
  bool oracle_check = false;
  std::string out_path;
  std::string dot_path;
  std::uint64_t seed = 1;
  std::string family;
  int size = 8;
  int count = 100;
  bool timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

struct Reply {
  int code = kExitOk;
  std::string text;
};

Reply json_reply(const Json& j, int code = kExitOk) { return {code, j.dump(2) + "\n"}; }

Reply cmd_validate(const Options& o) {
  const Model m = model_from_json(parse_json(read_file(o.input)));
  return json_reply({{"valid", true},
                     {"variables", m.num_variables()},
                     {"potentials", m.potentials().size()},
                     {"binary_pairwise", m.is_binary_pairwise()}});
}

Reply cmd_classify(const Options& o) {
  const Model m = model_from_json(parse_json(read_file(o.input)));
  const TractabilityReport r = classify_model(m, o.eps);
  return json_reply(report_to_json(r, m), r.tractable ? kExitOk : kExitNegative);
}

Nmrf compile_for_cli(const Model& m, double eps) {
  if (m.is_binary_pairwise()) return compile_binary_pairwise(m, classify_model(m, eps).plan, eps).nmrf;
  return prune(build_nmrf(m), eps);
}

Reply cmd_compile(const Options& o) {
  const Model m = model_from_json(parse_json(read_file(o.input)));
  const Nmrf n = compile_for_cli(m, o.eps);
  if (!o.dot_path.empty()) write_file(o.dot_path, nmrf_to_dot(n));
  return json_reply(nmrf_to_json(n));
}

Reply cmd_solve(const Options& o) {
  const Model m = model_from_json(parse_json(read_file(o.input)));
  SolveOptions so;
  so.method = parse_method(o.method);
  so.eps = o.eps;
  if (o.max_nodes >= 0) so.max_nodes = o.max_nodes;
  try {
    const MapSolution s = solve_map(m, so);
    Json j = solution_to_json(s, m);
    int code = kExitOk;
    if (o.oracle_check) {
      const MapSolution b = brute_force_map(m);
      const bool agree = std::abs(b.objective - s.objective) <= 1e-6 * (1.0 + std::abs(b.objective));
      j["oracle"] = {{"objective", b.objective}, {"agree", agree}};
      if (!agree) code = kExitNegative;
    }
    return json_reply(j, code);
  } catch (const IntractableError& e) {
    return json_reply({{"error", "IntractableTopology"}, {"witness", cycle_to_json(e.witness(), m)}}, kExitNegative);
  }
}

bool single_enode_form(const Nmrf& n) {
  std::vector<int> count(n.groups.size(), 0);
  for (const auto& node : n.nodes) {
    if (n.singleton_group(node.group)) continue;
    if (node.assignment.size() != 2 || ++count[static_cast<std::size_t>(node.group)] > 1) return false;
  }
  return true;
}

Reply cmd_perfect(const Options& o) {
  const Nmrf n = nmrf_from_json(parse_json(read_file(o.input)));
  const int cap = o.max_nodes >= 0 ? o.max_nodes : kDefaultHoleCap;
  const bool shortcut = single_enode_form(n);
  const PerfectionVerdict v = shortcut ? binary_pairwise_perfection(n, cap) : is_perfect_small(n.adjacency, cap);
  Json j = verdict_to_json(v, n);
  j["check"] = shortcut ? "odd_hole" : "odd_hole_and_antihole";
  return json_reply(j, v.perfect ? kExitOk : kExitNegative);
}

Reply cmd_submodular(const Options& o) {
  const NamedPotential p = potential_from_json(parse_json(read_file(o.input)));
  Json j{{"k", p.psi.k}, {"alpha", alpha(p.psi)}};
  const auto bad = supermodularity_violation(p.psi, o.eps);
  j["supermodular"] = !bad;
  if (p.psi.k == 3 && !bad) {
    const IndicatorRepresentation rep = construct_k3(p.psi, o.eps);
    j["feasible"] = true;
    j["branch"] = rep.one_weights.empty() ? "zeros" : "ones";
    j["representation"] = representation_to_json(rep, p.scope);
    return json_reply(j);
  }
  const FeasibilityVerdict v = representation_feasible(p.psi, o.eps);
  j["feasible"] = v.feasible;
  if (v.violation) j["witness"] = {{"projection", projection_to_json(*v.violation, p.scope)}};
  if (v.reason == InfeasibleReason::negative_alpha) j["witness"] = {{"alpha", v.alpha}};
  if (v.reason == InfeasibleReason::no_solution) j["witness"] = {{"infeasible_system", true}};
  if (v.representation) j["representation"] = representation_to_json(*v.representation, p.scope);
  return json_reply(j, v.feasible ? kExitOk : kExitNegative);
}

Reply cmd_bench(const Options& o) {
  Rng rng(o.seed);
  std::ostringstream csv;
  csv << "family,instance,size,edges,result" << (o.timing ? ",seconds" : "") << "\n";
  using Clock = std::chrono::steady_clock;
  bool all_agree = true;
  for (int i = 0; i < o.count; ++i) {
    std::string result;
    std::size_t edges = 0;
    double secs = -1.0;
    const auto t0 = Clock::now();
    if (o.family == "random-tractable" || o.family == "random-signed") {
      const Model m = o.family == "random-tractable"
                          ? random_tractable_model(rng, o.size, {true, 1.0})
                          : model_on(random_signed_topology(rng, o.size, 0.4), rng, {true, 1.0});
      edges = m.potentials().size() - static_cast<std::size_t>(m.num_variables());
      if (!classify_model(m, o.eps).tractable) {
        result = "intractable";
      } else {
        const MapSolution s = solve_map(m);
        result = std::to_string(s.objective);
        if (o.oracle_check) {
          const bool agree = std::abs(brute_force_map(m).objective - s.objective) <= 1e-6 * (1.0 + std::abs(s.objective));
          all_agree = all_agree && agree;
          result = agree ? "agree" : "disagree";
        }
      }
    } else if (o.family == "random-supermodular-k3") {
      const HighOrderPotential psi = random_supermodular(rng, 3);
      const IndicatorRepresentation rep = construct_k3(psi, o.eps);
      double worst = 0.0;
      for (std::uint32_t x = 0; x < 8; ++x) worst = std::max(worst, std::abs(rep.evaluate(x) - psi.at(x)));
      result = worst <= 1e-9 ? "exact" : "mismatch";
      all_agree = all_agree && worst <= 1e-9;
    } else if (o.family == "block-chain") {
      const SignedTopology topo = block_chain_topology(o.size);
      SignedGraph g{topo.num_vertices, {}};
      for (std::size_t e = 0; e < topo.edges.size(); ++e) {
        g.edges.push_back({topo.edges[e].first, topo.edges[e].second, topo.signs[e], static_cast<int>(e), 1.0});
      }
      edges = g.edges.size();
      const auto start = Clock::now();
      const TractabilityReport r = classify_signed(g);
      secs = std::chrono::duration<double>(Clock::now() - start).count();
      result = r.tractable ? "tractable" : "intractable";
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown family '" + o.family + "'");
    }
    if (secs < 0) secs = std::chrono::duration<double>(Clock::now() - t0).count();
    csv << o.family << "," << i << "," << o.size << "," << edges << "," << result;
    if (o.timing) csv << "," << secs;
    csv << "\n";
  }
  return {all_agree ? kExitOk : kExitNegative, csv.str()};
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::TooLarge: return kExitTooLarge;
    case ErrorCode::IntractableTopology:
    case ErrorCode::NotSupermodular: return kExitNegative;
    default: return kExitInput;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact MAP inference through weighted stable sets", "mapwss"};
  app.require_subcommand(1, 1);
  Options o;

  auto with_input = [&](CLI::App* sub, const char* what) {
    sub->add_option("input", o.input, what)->required();
    sub->add_option("--eps", o.eps, "associativity and pruning tolerance")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out_path, "write the report to this file");
  };
  auto* validate = app.add_subcommand("validate", "check a model file");
  with_input(validate, "model JSON");
  auto* classify = app.add_subcommand("classify", "block structure and tractability of a binary pairwise model");
  with_input(classify, "model JSON");
  auto* compile = app.add_subcommand("compile", "pruned NMRF as JSON");
  with_input(compile, "model JSON");
  compile->add_option("--dot", o.dot_path, "also write Graphviz DOT here");
  auto* solve = app.add_subcommand("solve", "exact MAP assignment");
  with_input(solve, "model JSON");
  solve->add_option("--method", o.method, "auto, bipartite, bnb or blocks")
      ->check(CLI::IsMember({"auto", "bipartite", "bnb", "blocks"}));
  solve->add_option("--max-nodes", o.max_nodes, "branch-and-bound node cap")->check(CLI::NonNegativeNumber);
  solve->add_flag("--oracle-check", o.oracle_check, "compare with brute force");
  auto* perfect = app.add_subcommand("perfect", "perfection check of an NMRF export");
  with_input(perfect, "NMRF JSON");
  perfect->add_option("--max-nodes", o.max_nodes, "vertex cap for the hole search")->check(CLI::NonNegativeNumber);
  auto* submodular = app.add_subcommand("submodular", "indicator representation of an order-k potential");
  with_input(submodular, "potential JSON");
  auto* bench = app.add_subcommand("bench", "seeded generator runs as CSV");
  bench->add_option("--family", o.family, "random-tractable, random-signed, random-supermodular-k3, block-chain")
      ->required();
  bench->add_option("--size", o.size, "variables, or edges for block-chain")->check(CLI::PositiveNumber);
  bench->add_option("--count", o.count, "instances")->check(CLI::NonNegativeNumber);
  bench->add_option("--seed", o.seed, "generator seed");
  bench->add_option("--eps", o.eps, "tolerance")->check(CLI::NonNegativeNumber);
  bench->add_flag("--oracle-check", o.oracle_check, "compare with brute force");
  bench->add_flag("--timing", o.timing, "add a wall-clock column");
  bench->add_option("--out", o.out_path, "write the CSV to this file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitInput;
  }

  Reply reply;
  try {
    if (*validate) reply = cmd_validate(o);
    else if (*classify) reply = cmd_classify(o);
    else if (*compile) reply = cmd_compile(o);
    else if (*solve) reply = cmd_solve(o);
    else if (*perfect) reply = cmd_perfect(o);
    else if (*submodular) reply = cmd_submodular(o);
    else reply = cmd_bench(o);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return kExitInput;
  }
  if (o.out_path.empty()) {
    out << reply.text;
  } else {
    try {
      write_file(o.out_path, reply.text);
    } catch (const Error& e) {
      err << e.what() << "\n";
      return kExitInput;
    }
  }
  return reply.code;
}

}  // namespace mapwss
