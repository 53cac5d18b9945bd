#include "mapwss/mwss.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <unordered_map>

namespace mapwss {

namespace {

// Dinic on a small dense-ish network with double capacities.
class MaxFlow {
 public:
  explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1), level_(static_cast<std::size_t>(n)),
                            it_(static_cast<std::size_t>(n)) {}

  void add_edge(int u, int v, double cap) {
    arcs_.push_back({v, head_[static_cast<std::size_t>(u)], cap});
    head_[static_cast<std::size_t>(u)] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[static_cast<std::size_t>(v)], 0.0});
    head_[static_cast<std::size_t>(v)] = static_cast<int>(arcs_.size()) - 1;
  }

  double run(int s, int t, double tol) {
    tol_ = tol;
    double flow = 0.0;
    while (bfs(s, t)) {
      it_ = head_;
      for (double f; (f = push(s, t, std::numeric_limits<double>::infinity())) > tol_;) flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual network after run().
  std::vector<bool> reachable(int s) const {
    std::vector<bool> seen(head_.size(), false);
    std::vector<int> stack{s};
    seen[static_cast<std::size_t>(s)] = true;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const auto& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > tol_ && !seen[static_cast<std::size_t>(arc.to)]) {
          seen[static_cast<std::size_t>(arc.to)] = true;
          stack.push_back(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int next;
    double cap;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int a = head_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const auto& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.cap > tol_ && level_[static_cast<std::size_t>(arc.to)] < 0) {
          level_[static_cast<std::size_t>(arc.to)] = level_[static_cast<std::size_t>(u)] + 1;
          q.push(arc.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(t)] >= 0;
  }

  double push(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& a = it_[static_cast<std::size_t>(u)]; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
      auto& arc = arcs_[static_cast<std::size_t>(a)];
      if (arc.cap <= tol_ || level_[static_cast<std::size_t>(arc.to)] != level_[static_cast<std::size_t>(u)] + 1) {
        continue;
      }
      const double got = push(arc.to, t, std::min(limit, arc.cap));
      if (got > tol_) {
        arc.cap -= got;
        arcs_[static_cast<std::size_t>(a ^ 1)].cap += got;
        return got;
      }
    }
    return 0.0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> it_;
  double tol_ = 0.0;
};

// Dynamic bitset over at most a few hundred vertices.
class Bits {
 public:
  Bits() = default;
  explicit Bits(int n) : w_(static_cast<std::size_t>((n + 63) / 64), 0) {}

  void set(int i) { w_[static_cast<std::size_t>(i >> 6)] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w_[static_cast<std::size_t>(i >> 6)] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w_[static_cast<std::size_t>(i >> 6)] >> (i & 63)) & 1U; }
  bool any() const {
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t x) { return x != 0; });
  }
  int count_and(const Bits& o) const {
    int c = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] & o.w_[i]) return true;
    }
    return false;
  }
  void minus(const Bits& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
  }
  bool subset_of(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      if (w_[i] & ~o.w_[i]) return false;
    }
    return true;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      for (std::uint64_t m = w_[i]; m; m &= m - 1) f(static_cast<int>(i * 64) + std::countr_zero(m));
    }
  }

 private:
  std::vector<std::uint64_t> w_;
};

class BranchBound {
 public:
  explicit BranchBound(const WeightedGraph& g) : n_(g.graph.size()), w_(g.weights) {
    for (int v = 0; v < n_; ++v) {
      Bits b(n_);
      for (int u : g.graph.neighbors(v)) b.set(u);
      adj_.push_back(std::move(b));
    }
  }

  StableSetSolution solve() {
    Bits all(n_);
    for (int v = 0; v < n_; ++v) all.set(v);
    best_weight_ = -1.0;
    std::vector<int> chosen;
    search(all, 0.0, chosen);
    std::sort(best_.begin(), best_.end());
    return {best_, std::max(best_weight_, 0.0)};
  }

 private:
  // Greedy clique cover in ascending id: each clique contributes its heaviest member.
  double bound(const Bits& p) const {
    std::vector<Bits> cliques;
    std::vector<double> heaviest;
    p.for_each([&](int v) {
      for (std::size_t c = 0; c < cliques.size(); ++c) {
        if (cliques[c].subset_of(adj_[static_cast<std::size_t>(v)])) {
          cliques[c].set(v);
          heaviest[c] = std::max(heaviest[c], w_[static_cast<std::size_t>(v)]);
          return;
        }
      }
      Bits fresh(n_);
      fresh.set(v);
      cliques.push_back(std::move(fresh));
      heaviest.push_back(w_[static_cast<std::size_t>(v)]);
    });
    double total = 0.0;
    for (double h : heaviest) total += h;
    return total;
  }

  void search(Bits p, double current, std::vector<int>& chosen) {
    const std::size_t mark = chosen.size();
    // Vertices with no neighbour left in p belong to some optimum.
    int pick = -1;
    int pick_degree = -1;
    std::vector<int> free_vertices;
    p.for_each([&](int v) {
      const int d = p.count_and(adj_[static_cast<std::size_t>(v)]);
      if (d == 0) {
        free_vertices.push_back(v);
      } else if (d > pick_degree) {
        pick = v;
        pick_degree = d;
      }
    });
    for (int v : free_vertices) {
      p.reset(v);
      chosen.push_back(v);
      current += w_[static_cast<std::size_t>(v)];
    }
    if (pick < 0) {
      if (current > best_weight_) {
        best_weight_ = current;
        best_ = chosen;
      }
    } else if (current + bound(p) > best_weight_) {
      Bits with = p;
      with.reset(pick);
      with.minus(adj_[static_cast<std::size_t>(pick)]);
      chosen.push_back(pick);
      search(std::move(with), current + w_[static_cast<std::size_t>(pick)], chosen);
      chosen.pop_back();
      p.reset(pick);
      search(std::move(p), current, chosen);
    }
    chosen.resize(mark);
  }

  int n_;
  std::vector<double> w_;
  std::vector<Bits> adj_;
  std::vector<int> best_;
  double best_weight_ = -1.0;
};

}  // namespace

StableSetSolution mwss_bipartite(const WeightedGraph& graph, std::span<const int> side) {
  const int n = graph.graph.size();
  if (static_cast<int>(side.size()) != n || static_cast<int>(graph.weights.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "side and weight vectors must have one entry per vertex");
  }
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    const double w = graph.weights[static_cast<std::size_t>(v)];
    if (w < 0.0) throw Error(ErrorCode::InvalidArgument, "negative vertex weight");
    if (side[static_cast<std::size_t>(v)] != 0 && side[static_cast<std::size_t>(v)] != 1) {
      throw Error(ErrorCode::InvalidArgument, "side entries must be 0 or 1");
    }
    total += w;
  }
  for (auto [u, v] : graph.graph.edges()) {
    if (side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)]) {
      throw Error(ErrorCode::NotBipartite,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " has both ends on one side");
    }
  }
  const int s = n;
  const int t = n + 1;
  MaxFlow flow(n + 2);
  const double big = total + 1.0;
  for (int v = 0; v < n; ++v) {
    const double w = graph.weights[static_cast<std::size_t>(v)];
    if (side[static_cast<std::size_t>(v)] == 0) {
      flow.add_edge(s, v, w);
      for (int u : graph.graph.neighbors(v)) flow.add_edge(v, u, big);
    } else {
      flow.add_edge(v, t, w);
    }
  }
  flow.run(s, t, 1e-12 * (1.0 + total));
  const auto reach = flow.reachable(s);
  StableSetSolution out;
  for (int v = 0; v < n; ++v) {
    const bool in = side[static_cast<std::size_t>(v)] == 0 ? reach[static_cast<std::size_t>(v)]
                                                            : !reach[static_cast<std::size_t>(v)];
    if (in) {
      out.nodes.push_back(v);
      out.weight += graph.weights[static_cast<std::size_t>(v)];
    }
  }
  return out;
}

StableSetSolution mwss_branch_bound(const WeightedGraph& graph, int max_nodes) {
  const int n = graph.graph.size();
  if (n > max_nodes) {
    throw Error(ErrorCode::TooLarge,
                "graph has " + std::to_string(n) + " nodes, branch-and-bound cap is " + std::to_string(max_nodes));
  }
  if (static_cast<int>(graph.weights.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "one weight per vertex required");
  }
  for (double w : graph.weights) {
    if (w < 0.0) throw Error(ErrorCode::InvalidArgument, "negative vertex weight");
  }
  if (n == 0) return {};
  return BranchBound(graph).solve();
}

StableSetSolution mwss_by_components(const WeightedGraph& graph, int max_nodes) {
  const int n = graph.graph.size();
  if (static_cast<int>(graph.weights.size()) != n) {
    throw Error(ErrorCode::InvalidArgument, "one weight per vertex required");
  }
  std::vector<int> comp(static_cast<std::size_t>(n), -1);
  StableSetSolution out;
  for (int r = 0; r < n; ++r) {
    if (comp[static_cast<std::size_t>(r)] >= 0) continue;
    std::vector<int> members{r};
    comp[static_cast<std::size_t>(r)] = r;
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (int w : graph.graph.neighbors(members[i])) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = r;
          members.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    WeightedGraph part{graph.graph.induced(members), {}};
    for (int v : members) part.weights.push_back(graph.weights[static_cast<std::size_t>(v)]);
    const StableSetSolution s = mwss_branch_bound(part, max_nodes);
    for (int v : s.nodes) out.nodes.push_back(members[static_cast<std::size_t>(v)]);
    out.weight += s.weight;
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

StableSetSolution mmwss_complete(const Nmrf& pruned, const StableSetSolution& base) {
  std::vector<int> labels(static_cast<std::size_t>(pruned.num_variables()), -1);
  std::vector<bool> covered(pruned.groups.size(), false);
  StableSetSolution out;

  auto admit = [&](const NmrfNode& node) {
    for (auto [var, label] : node.assignment) labels[static_cast<std::size_t>(var)] = label;
    covered[static_cast<std::size_t>(node.group)] = true;
    out.nodes.push_back(node.id);
    out.weight += node.weight;
  };
  auto fits = [&](const NmrfNode& node) {
    return std::all_of(node.assignment.begin(), node.assignment.end(), [&](const std::pair<int, int>& a) {
      const int l = labels[static_cast<std::size_t>(a.first)];
      return l < 0 || l == a.second;
    });
  };

  for (int local : base.nodes) {
    if (local < 0 || local >= static_cast<int>(pruned.nodes.size())) {
      throw Error(ErrorCode::InvalidArgument, "stable set refers to a missing node");
    }
    const auto& node = pruned.nodes[static_cast<std::size_t>(local)];
    if (covered[static_cast<std::size_t>(node.group)] || !fits(node)) {
      throw Error(ErrorCode::Inconsistent, "base set is not stable");
    }
    admit(node);
  }

  std::vector<std::vector<const NmrfNode*>> by_group(pruned.groups.size());
  for (const auto& node : pruned.pruned) by_group[static_cast<std::size_t>(node.group)].push_back(&node);
  // Present nodes come last: they are only needed when a weight sits at the
  // pruning threshold.
  for (const auto& node : pruned.nodes) by_group[static_cast<std::size_t>(node.group)].push_back(&node);

  for (std::size_t g = 0; g < pruned.groups.size(); ++g) {
    if (covered[g]) continue;
    const auto& candidates = by_group[g];
    auto hit = std::find_if(candidates.begin(), candidates.end(), [&](const NmrfNode* n) { return fits(*n); });
    if (hit == candidates.end()) {
      throw Error(ErrorCode::Inconsistent, "clique group " + std::to_string(g) + " cannot be represented");
    }
    admit(**hit);
  }
  std::sort(out.nodes.begin(), out.nodes.end());
  return out;
}

MapSolution decode_map(const StableSetSolution& mmwss, const Nmrf& nmrf, const Model& model, double constant,
                       double tolerance) {
  std::unordered_map<int, const NmrfNode*> by_id;
  for (const auto& n : nmrf.nodes) by_id[n.id] = &n;
  for (const auto& n : nmrf.pruned) by_id[n.id] = &n;

  MapSolution out;
  out.assignment.assign(static_cast<std::size_t>(model.num_variables()), -1);
  for (int id : mmwss.nodes) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw Error(ErrorCode::InvalidArgument, "unknown node id " + std::to_string(id));
    const NmrfNode& node = *it->second;
    if (!nmrf.singleton_group(node.group)) continue;
    const auto [var, label] = node.assignment.front();
    if (out.assignment[static_cast<std::size_t>(var)] >= 0) {
      throw Error(ErrorCode::Inconsistent, "two snodes chosen for variable " + model.name(var));
    }
    out.assignment[static_cast<std::size_t>(var)] = label;
  }
  for (int v = 0; v < model.num_variables(); ++v) {
    if (out.assignment[static_cast<std::size_t>(v)] < 0) {
      throw Error(ErrorCode::Inconsistent, "no snode chosen for variable " + model.name(v));
    }
  }
  out.objective = model.energy(out.assignment);
  const double predicted = mmwss.weight + constant;
  if (std::abs(out.objective - predicted) > tolerance * (1.0 + std::abs(out.objective))) {
    throw Error(ErrorCode::ObjectiveMismatch, "objective " + std::to_string(out.objective) +
                                                  " differs from stable set weight plus constant " +
                                                  std::to_string(predicted));
  }
  return out;
}

}  // namespace mapwss
