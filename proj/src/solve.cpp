#include "mapwss/solve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <queue>

#include "mapwss/nmrf.hpp"
#include "mapwss/structure.hpp"

namespace mapwss {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Candidate {
  std::vector<int> assignment;
  double objective = 0.0;
};

Candidate finish(const Nmrf& nmrf, const StableSetSolution& base, const Model& model) {
  const StableSetSolution full = mmwss_complete(nmrf, base);
  MapSolution m = decode_map(full, nmrf, model, nmrf.constant);
  return {std::move(m.assignment), m.objective};
}

Candidate solve_bnb(const Model& model, std::span<const int> clamps, const SolveOptions& opt) {
  Nmrf nmrf;
  if (model.is_binary_pairwise()) {
    nmrf = compile_binary_pairwise(model, default_enode_plan(signed_view(model, opt.eps)), opt.eps).nmrf;
  } else {
    nmrf = prune(build_nmrf(model), opt.eps);
  }
  nmrf = condition(nmrf, clamps);
  return finish(nmrf, mwss_branch_bound(weighted_graph(nmrf), opt.max_nodes), model);
}

// Side of a node in the bipartite pruned NMRF of a B_R model.
std::vector<int> node_sides(const Nmrf& nmrf, const std::vector<bool>& in_second) {
  std::vector<int> side;
  side.reserve(nmrf.nodes.size());
  for (const auto& n : nmrf.nodes) {
    const auto [var, label] = n.assignment.front();
    side.push_back((in_second[static_cast<std::size_t>(var)] ? 1 : 0) ^ label);
  }
  return side;
}

std::vector<bool> second_mask(int n, const Bipartition& p) {
  std::vector<bool> mask(static_cast<std::size_t>(n), false);
  for (int v : p.second) mask[static_cast<std::size_t>(v)] = true;
  return mask;
}

Candidate solve_bipartite(const Model& model, std::span<const int> clamps, const SolveOptions& opt) {
  require_binary_pairwise(model);
  const SignedGraph sg = signed_view(model, opt.eps);
  const auto br = detect_br(sg);
  if (!br) throw IntractableError(*find_frustrated_cycle(sg));
  // Any sign-compatible form keeps a B_R model bipartite.
  Nmrf nmrf = condition(compile_binary_pairwise(model, default_enode_plan(sg), opt.eps).nmrf, clamps);
  const auto side = node_sides(nmrf, second_mask(model.num_variables(), *br));
  return finish(nmrf, mwss_bipartite(weighted_graph(nmrf), side), model);
}

// Block-tree conditioning on a reparameterized model.
class BlockSolver {
 public:
  BlockSolver(const Model& model, const SolveOptions& opt) : model_(model), opt_(opt) {
    require_binary_pairwise(model);
    report_ = classify_model(model, opt.eps);
    if (!report_.tractable) throw IntractableError(std::get<IntractableClass>(report_.first_intractable()->cls).witness);
    rep_ = apply_enode_plan(model, report_.plan, opt.eps);
    const int n = model.num_variables();
    unary_.assign(static_cast<std::size_t>(n), {0.0, 0.0});
    for (const auto& p : rep_.potentials()) {
      if (p.scope.size() == 1) unary_[static_cast<std::size_t>(p.scope[0])] = {p.table[0], p.table[1]};
    }
    build_tree();
  }

  Candidate solve(std::span<const int> clamps) {
    const int n = model_.num_variables();
    std::vector<std::array<double, 2>> message(static_cast<std::size_t>(n), {0.0, 0.0});
    std::vector<std::array<std::vector<int>, 2>> best(blocks_.size());

    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      const int b = *it;
      const int p = parent_[static_cast<std::size_t>(b)];
      for (int x = 0; x < 2; ++x) {
        const int c = clamps[static_cast<std::size_t>(p)];
        if (c >= 0 && c != x) {
          message[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)] = kNegInf;
          continue;
        }
        auto [labels, value] = solve_block(b, x, clamps, message);
        message[static_cast<std::size_t>(p)][static_cast<std::size_t>(x)] += value;
        best[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] = std::move(labels);
      }
    }

    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    for (int r : roots_) {
      double top = kNegInf;
      for (int x = 0; x < 2; ++x) {
        const int c = clamps[static_cast<std::size_t>(r)];
        if (c >= 0 && c != x) continue;
        const double v = unary_[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)] +
                         message[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)];
        if (v > top) {
          top = v;
          assignment[static_cast<std::size_t>(r)] = x;
        }
      }
    }
    for (int b : order_) {
      const auto& blk = report_.blocks[static_cast<std::size_t>(b)].block;
      const int x = assignment[static_cast<std::size_t>(parent_[static_cast<std::size_t>(b)])];
      const auto& labels = best[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)];
      for (std::size_t i = 0; i < blk.vertices.size(); ++i) assignment[static_cast<std::size_t>(blk.vertices[i])] = labels[i];
    }
    return {assignment, model_.energy(assignment)};
  }

 private:
  void build_tree() {
    const int n = model_.num_variables();
    std::vector<std::vector<int>> vertex_blocks(static_cast<std::size_t>(n));
    for (std::size_t b = 0; b < report_.blocks.size(); ++b) {
      const auto& blk = report_.blocks[b].block;
      if (blk.vertices.size() < 2) continue;
      for (int v : blk.vertices) vertex_blocks[static_cast<std::size_t>(v)].push_back(static_cast<int>(b));
    }
    blocks_.assign(report_.blocks.size(), false);
    parent_.assign(report_.blocks.size(), -1);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int r = 0; r < n; ++r) {
      if (seen[static_cast<std::size_t>(r)]) continue;
      seen[static_cast<std::size_t>(r)] = true;
      roots_.push_back(r);
      std::queue<int> q;
      auto attach = [&](int v) {
        for (int b : vertex_blocks[static_cast<std::size_t>(v)]) {
          if (blocks_[static_cast<std::size_t>(b)]) continue;
          blocks_[static_cast<std::size_t>(b)] = true;
          parent_[static_cast<std::size_t>(b)] = v;
          q.push(b);
        }
      };
      attach(r);
      while (!q.empty()) {
        const int b = q.front();
        q.pop();
        order_.push_back(b);
        for (int w : report_.blocks[static_cast<std::size_t>(b)].block.vertices) {
          if (seen[static_cast<std::size_t>(w)]) continue;
          seen[static_cast<std::size_t>(w)] = true;
          attach(w);
        }
      }
    }
  }

  std::pair<std::vector<int>, double> solve_block(int b, int x, std::span<const int> clamps,
                                                  const std::vector<std::array<double, 2>>& message) {
    const auto& cb = report_.blocks[static_cast<std::size_t>(b)];
    const auto& verts = cb.block.vertices;
    const int p = parent_[static_cast<std::size_t>(b)];
    auto local = [&](int v) {
      return static_cast<int>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
    };

    std::vector<Variable> vars;
    std::vector<Potential> pots;
    std::vector<int> sub_clamps;
    for (int v : verts) {
      vars.push_back({model_.name(v), 2});
      sub_clamps.push_back(v == p ? x : clamps[static_cast<std::size_t>(v)]);
    }
    EnodePlan plan;
    for (int e : cb.block.edges) {
      const auto& pe = report_.plan[static_cast<std::size_t>(e)];
      const EdgeTable t = oriented_table(rep_.potentials()[static_cast<std::size_t>(pe.potential)]);
      plan.push_back({local(pe.u), local(pe.v), static_cast<int>(pots.size()), pe.form});
      pots.push_back({{local(pe.u), local(pe.v)}, {t[0], t[1], t[2], t[3]}});
    }
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const int v = verts[i];
      if (v == p) continue;
      std::array<double, 2> u = unary_[static_cast<std::size_t>(v)];
      for (int l = 0; l < 2; ++l) {
        const double m = message[static_cast<std::size_t>(v)][static_cast<std::size_t>(l)];
        // -inf marks a clamped-out label; conditioning removes it anyway.
        if (m != kNegInf) u[static_cast<std::size_t>(l)] += m;
      }
      pots.push_back({{static_cast<int>(i)}, {u[0], u[1]}});
    }
    const Model sub(std::move(vars), std::move(pots));
    const Nmrf full = compile_binary_pairwise(sub, plan, opt_.eps).nmrf;
    if (const auto* br = std::get_if<BrClass>(&cb.cls)) {
      const Nmrf nmrf = condition(full, sub_clamps);
      std::vector<bool> second(verts.size(), false);
      for (int v : br->partition.second) second[static_cast<std::size_t>(local(v))] = true;
      Candidate c = finish(nmrf, mwss_bipartite(weighted_graph(nmrf), node_sides(nmrf, second)), sub);
      return {std::move(c.assignment), c.objective};
    }
    // With both base vertices clamped every apex is its own component.
    const auto [s, t] = base_pair(cb.cls);
    std::optional<Candidate> top;
    for (int ls = 0; ls < 2; ++ls) {
      for (int lt = 0; lt < 2; ++lt) {
        std::vector<int> c = sub_clamps;
        int& cs = c[static_cast<std::size_t>(local(s))];
        int& ct = c[static_cast<std::size_t>(local(t))];
        if ((cs >= 0 && cs != ls) || (ct >= 0 && ct != lt)) continue;
        cs = ls;
        ct = lt;
        const Nmrf nmrf = condition(full, c);
        Candidate cand = finish(nmrf, mwss_by_components(weighted_graph(nmrf), opt_.max_nodes), sub);
        if (!top || cand.objective > top->objective) top = std::move(cand);
      }
    }
    return {std::move(top->assignment), top->objective};
  }

  static std::pair<int, int> base_pair(const BlockClass& cls) {
    if (const auto* t = std::get_if<TmnClass>(&cls)) return {t->s, t->t};
    const auto& u = std::get<UnClass>(cls);
    return {u.s, u.t};
  }

  const Model& model_;
  SolveOptions opt_;
  TractabilityReport report_;
  Model rep_;
  std::vector<std::array<double, 2>> unary_;
  std::vector<bool> blocks_;
  std::vector<int> parent_;
  std::vector<int> order_;
  std::vector<int> roots_;
};

template <class Solver>
MapSolution refine(const Model& model, const SolveOptions& opt, Solver&& solver, std::string method) {
  const int n = model.num_variables();
  std::vector<int> clamps(static_cast<std::size_t>(n), -1);
  Candidate cur = solver(clamps);
  if (opt.lexicographic) {
    const double opt_value = cur.objective;
    const double slack = 1e-9 * (1.0 + std::abs(opt_value));
    for (int v = 0; v < n; ++v) {
      if (cur.assignment[static_cast<std::size_t>(v)] == 1) {
        clamps[static_cast<std::size_t>(v)] = 0;
        Candidate alt = solver(clamps);
        if (alt.objective >= opt_value - slack) {
          cur = std::move(alt);
        } else {
          clamps[static_cast<std::size_t>(v)] = 1;
        }
      } else {
        clamps[static_cast<std::size_t>(v)] = 0;
      }
    }
  }
  return {std::move(cur.assignment), cur.objective, std::move(method)};
}

}  // namespace

std::string IntractableError::describe(const SignedCycle& c) {
  std::string s = "frustrated cycle";
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    s += ' ' + std::to_string(c.vertices[i]);
    if (i < c.signs.size()) s += c.signs[i] == Sign::associative ? " +" : " -";
  }
  return s;
}

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::automatic: return "auto";
    case SolveMethod::bipartite: return "bipartite";
    case SolveMethod::bnb: return "bnb";
    case SolveMethod::blocks: return "blocks";
  }
  return "auto";
}

SolveMethod parse_method(std::string_view text) {
  if (text == "auto") return SolveMethod::automatic;
  if (text == "bipartite") return SolveMethod::bipartite;
  if (text == "bnb") return SolveMethod::bnb;
  if (text == "blocks") return SolveMethod::blocks;
  throw Error(ErrorCode::InvalidArgument, "method must be auto, bipartite, bnb or blocks");
}

MapSolution solve_map(const Model& model, const SolveOptions& options) {
  SolveMethod method = options.method;
  std::string tag(to_string(method));
  if (method == SolveMethod::automatic) {
    method = model.is_binary_pairwise() ? SolveMethod::blocks : SolveMethod::bnb;
    tag = "auto(" + std::string(to_string(method)) + ")";
  }
  switch (method) {
    case SolveMethod::bnb:
      return refine(model, options, [&](std::span<const int> c) { return solve_bnb(model, c, options); }, tag);
    case SolveMethod::bipartite:
      return refine(model, options, [&](std::span<const int> c) { return solve_bipartite(model, c, options); }, tag);
    default: {
      BlockSolver blocks(model, options);
      return refine(model, options, [&](std::span<const int> c) { return blocks.solve(c); }, tag);
    }
  }
}

}  // namespace mapwss
