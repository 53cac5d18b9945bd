#include "mapwss/structure.hpp"

#include <algorithm>
#include <numeric>
#include <queue>

#include "mapwss/perfection.hpp"

namespace mapwss {

namespace {

// Compressed incidence lists: for vertex v, entries [start[v], start[v+1])
// of `incident` hold (neighbour, edge index).
struct Incidence {
  std::vector<int> start;
  std::vector<std::pair<int, int>> incident;

  explicit Incidence(const SignedGraph& g) : start(static_cast<std::size_t>(g.num_vertices) + 1, 0) {
    for (const auto& e : g.edges) {
      ++start[static_cast<std::size_t>(e.u) + 1];
      ++start[static_cast<std::size_t>(e.v) + 1];
    }
    std::partial_sum(start.begin(), start.end(), start.begin());
    incident.resize(g.edges.size() * 2);
    std::vector<int> fill(start.begin(), start.end() - 1);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const auto& e = g.edges[i];
      incident[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.u)]++)] = {e.v, static_cast<int>(i)};
      incident[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.v)]++)] = {e.u, static_cast<int>(i)};
    }
  }

  std::span<const std::pair<int, int>> of(int v) const {
    const auto b = static_cast<std::size_t>(start[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(start[static_cast<std::size_t>(v) + 1]);
    return {incident.data() + b, e - b};
  }
  int degree(int v) const { return start[static_cast<std::size_t>(v) + 1] - start[static_cast<std::size_t>(v)]; }
};

int parity(Sign s) { return s == Sign::repulsive ? 1 : 0; }

// Parity union-find: parity_[x] is x's side relative to its parent.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(int n) : parent_(static_cast<std::size_t>(n)), parity_(static_cast<std::size_t>(n), 0) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  std::pair<int, int> find(int x) {
    int p = 0;
    int root = x;
    while (parent_[static_cast<std::size_t>(root)] != root) {
      p ^= parity_[static_cast<std::size_t>(root)];
      root = parent_[static_cast<std::size_t>(root)];
    }
    // path compression
    int acc = p;
    while (parent_[static_cast<std::size_t>(x)] != x) {
      const int next = parent_[static_cast<std::size_t>(x)];
      const int step = parity_[static_cast<std::size_t>(x)];
      parent_[static_cast<std::size_t>(x)] = root;
      parity_[static_cast<std::size_t>(x)] = acc;
      acc ^= step;
      x = next;
    }
    return {root, p};
  }

  // Requires side(a) xor side(b) == rel.  False on contradiction.
  bool unite(int a, int b, int rel) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent_[static_cast<std::size_t>(rb)] = ra;
    parity_[static_cast<std::size_t>(rb)] = pa ^ pb ^ rel;
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> parity_;
};

SignedGraph localize(const SignedGraph& graph, const Block& block, std::vector<int>& scratch) {
  SignedGraph local;
  local.num_vertices = static_cast<int>(block.vertices.size());
  for (std::size_t i = 0; i < block.vertices.size(); ++i) scratch[static_cast<std::size_t>(block.vertices[i])] = static_cast<int>(i);
  local.edges.reserve(block.edges.size());
  for (int ei : block.edges) {
    SignedEdge e = graph.edges[static_cast<std::size_t>(ei)];
    e.u = scratch[static_cast<std::size_t>(e.u)];
    e.v = scratch[static_cast<std::size_t>(e.v)];
    if (e.u > e.v) std::swap(e.u, e.v);
    local.edges.push_back(e);
  }
  for (int v : block.vertices) scratch[static_cast<std::size_t>(v)] = -1;
  return local;
}

BlockClass globalize(BlockClass cls, const std::vector<int>& vertices) {
  auto map = [&](int v) { return vertices[static_cast<std::size_t>(v)]; };
  auto map_all = [&](std::vector<int>& vs) {
    for (auto& v : vs) v = map(v);
  };
  std::visit(
      [&](auto& c) {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, BrClass>) {
          map_all(c.partition.first);
          map_all(c.partition.second);
        } else if constexpr (std::is_same_v<T, TmnClass>) {
          c.s = map(c.s);
          c.t = map(c.t);
          map_all(c.repulsive_apexes);
          map_all(c.associative_apexes);
        } else if constexpr (std::is_same_v<T, UnClass>) {
          c.s = map(c.s);
          c.t = map(c.t);
          map_all(c.apexes);
        } else {
          map_all(c.witness.vertices);
        }
      },
      cls);
  return cls;
}

// Two vertices covering every edge, all others of degree 2 on both.
std::optional<BlockClass> recognize_triangle_fan(const SignedGraph& g, const Incidence& inc) {
  const int k = g.num_vertices;
  if (k < 3 || static_cast<int>(g.edges.size()) != 2 * k - 3) return std::nullopt;

  int s = -1;
  int t = -1;
  if (k == 3) {
    int repulsive = 0;
    for (const auto& e : g.edges) repulsive += parity(e.sign);
    if (repulsive == 3) {
      TmnClass c;
      c.s = 0;
      c.t = 1;
      c.repulsive_apexes = {2};
      return c;
    }
    if (repulsive != 1) return std::nullopt;
    // Base is the lexicographically first associative edge.
    const SignedEdge* base = nullptr;
    for (const auto& e : g.edges) {
      if (e.sign == Sign::associative && (!base || std::pair(e.u, e.v) < std::pair(base->u, base->v))) base = &e;
    }
    UnClass c;
    c.s = base->u;
    c.t = base->v;
    c.apexes = {3 - base->u - base->v};
    return c;
  }

  for (int v = 0; v < k; ++v) {
    if (inc.degree(v) != k - 1) continue;
    if (s < 0) {
      s = v;
    } else if (t < 0) {
      t = v;
    } else {
      return std::nullopt;
    }
  }
  if (t < 0) return std::nullopt;

  Sign base_sign = Sign::associative;
  bool base_found = false;
  for (auto [w, ei] : inc.of(s)) {
    if (w == t) {
      base_sign = g.edges[static_cast<std::size_t>(ei)].sign;
      base_found = true;
    }
  }
  if (!base_found) return std::nullopt;

  TmnClass tmn;
  tmn.s = s;
  tmn.t = t;
  UnClass un;
  un.s = s;
  un.t = t;
  for (int v = 0; v < k; ++v) {
    if (v == s || v == t) continue;
    if (inc.degree(v) != 2) return std::nullopt;
    int repulsive = 0;
    for (auto [w, ei] : inc.of(v)) {
      if (w != s && w != t) return std::nullopt;
      repulsive += parity(g.edges[static_cast<std::size_t>(ei)].sign);
    }
    if (base_sign == Sign::repulsive) {
      if (repulsive == 1) return std::nullopt;
      (repulsive == 2 ? tmn.repulsive_apexes : tmn.associative_apexes).push_back(v);
    } else {
      if (repulsive != 1) return std::nullopt;
      un.apexes.push_back(v);
    }
  }
  if (base_sign == Sign::repulsive) return tmn;
  return un;
}

// Frustrated simple cycle with at least four edges, found by a budgeted
// depth-first enumeration from each start vertex.
std::optional<SignedCycle> long_frustrated_cycle(const SignedGraph& g, const Incidence& inc, long budget) {
  const int k = g.num_vertices;
  std::vector<char> on_path(static_cast<std::size_t>(k), 0);
  struct Frame {
    int vertex;
    int parity;
    std::size_t next;
  };
  for (int start = 0; start < k && budget > 0; ++start) {
    std::vector<Frame> stack{{start, 0, 0}};
    std::vector<Sign> signs;
    on_path[static_cast<std::size_t>(start)] = 1;
    while (!stack.empty() && budget-- > 0) {
      Frame& top = stack.back();
      auto nbrs = inc.of(top.vertex);
      if (top.next >= nbrs.size()) {
        on_path[static_cast<std::size_t>(top.vertex)] = 0;
        stack.pop_back();
        if (!signs.empty()) signs.pop_back();
        continue;
      }
      auto [w, ei] = nbrs[top.next++];
      const Sign sign = g.edges[static_cast<std::size_t>(ei)].sign;
      if (w == start && stack.size() >= 4 && ((top.parity ^ parity(sign)) == 1)) {
        SignedCycle c;
        for (const auto& f : stack) c.vertices.push_back(f.vertex);
        c.signs = signs;
        c.signs.push_back(sign);
        return c;
      }
      if (w <= start || on_path[static_cast<std::size_t>(w)]) continue;
      on_path[static_cast<std::size_t>(w)] = 1;
      signs.push_back(sign);
      stack.push_back({w, top.parity ^ parity(sign), 0});
    }
    std::fill(on_path.begin(), on_path.end(), 0);
  }
  return std::nullopt;
}

// Frustrated triangle whose default-form enodes need a connecting snode.
std::optional<SignedCycle> snode_triangle(const SignedGraph& g, const Incidence& inc) {
  std::vector<Sign> sign_to(static_cast<std::size_t>(g.num_vertices));
  std::vector<char> marked(static_cast<std::size_t>(g.num_vertices), 0);
  for (const auto& e : g.edges) {
    for (auto [w, ei] : inc.of(e.u)) {
      marked[static_cast<std::size_t>(w)] = 1;
      sign_to[static_cast<std::size_t>(w)] = g.edges[static_cast<std::size_t>(ei)].sign;
    }
    for (auto [w, ei] : inc.of(e.v)) {
      if (w <= e.v || !marked[static_cast<std::size_t>(w)]) continue;
      SignedCycle c{{e.u, e.v, w}, {e.sign, g.edges[static_cast<std::size_t>(ei)].sign, sign_to[static_cast<std::size_t>(w)]}};
      if (!c.frustrated()) continue;
      std::vector<EnodeForm> forms;
      for (Sign s : c.signs) forms.push_back(s == Sign::associative ? EnodeForm::f00 : EnodeForm::f01);
      if (cycle_to_induced_hole(c, forms).size() >= 5) return c;
    }
    for (auto [w, ei] : inc.of(e.u)) marked[static_cast<std::size_t>(w)] = 0;
  }
  return std::nullopt;
}

SignedCycle intractable_witness(const SignedGraph& g, const Incidence& inc) {
  SignedCycle fundamental = *find_frustrated_cycle(g);
  if (fundamental.vertices.size() >= 4) return fundamental;
  if (auto c = long_frustrated_cycle(g, inc, 2'000'000)) return *c;
  if (auto c = snode_triangle(g, inc)) return *c;
  return fundamental;
}

BlockClass classify_local(const SignedGraph& g) {
  if (auto bip = detect_br(g)) return BrClass{std::move(*bip)};
  Incidence inc(g);
  if (auto fan = recognize_triangle_fan(g, inc)) return *fan;
  return IntractableClass{intractable_witness(g, inc)};
}

}  // namespace

BlockTree block_decompose(const SignedGraph& graph) {
  const int n = graph.num_vertices;
  Incidence inc(graph);
  BlockTree tree;
  std::vector<int> disc(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<int> edge_stack;
  std::vector<int> stamp(static_cast<std::size_t>(n), -1);
  std::vector<int> membership(static_cast<std::size_t>(n), 0);
  int timer = 0;

  struct Frame {
    int vertex;
    int parent_edge;
    int next;
  };
  std::vector<Frame> frames;

  auto emit_block = [&](int until_edge) {
    Block b;
    const int id = static_cast<int>(tree.blocks.size());
    while (true) {
      const int e = edge_stack.back();
      edge_stack.pop_back();
      b.edges.push_back(e);
      for (int v : {graph.edges[static_cast<std::size_t>(e)].u, graph.edges[static_cast<std::size_t>(e)].v}) {
        if (stamp[static_cast<std::size_t>(v)] != id) {
          stamp[static_cast<std::size_t>(v)] = id;
          b.vertices.push_back(v);
        }
      }
      if (e == until_edge) break;
    }
    std::sort(b.vertices.begin(), b.vertices.end());
    std::sort(b.edges.begin(), b.edges.end());
    for (int v : b.vertices) ++membership[static_cast<std::size_t>(v)];
    tree.blocks.push_back(std::move(b));
  };

  for (int root = 0; root < n; ++root) {
    if (disc[static_cast<std::size_t>(root)] >= 0) continue;
    if (inc.degree(root) == 0) {
      disc[static_cast<std::size_t>(root)] = timer++;
      tree.blocks.push_back({{root}, {}});
      continue;
    }
    disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
    frames.push_back({root, -1, 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto nbrs = inc.of(f.vertex);
      if (f.next < static_cast<int>(nbrs.size())) {
        auto [w, e] = nbrs[static_cast<std::size_t>(f.next++)];
        if (e == f.parent_edge) continue;
        if (disc[static_cast<std::size_t>(w)] < 0) {
          edge_stack.push_back(e);
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          frames.push_back({w, e, 0});
        } else if (disc[static_cast<std::size_t>(w)] < disc[static_cast<std::size_t>(f.vertex)]) {
          edge_stack.push_back(e);
          low[static_cast<std::size_t>(f.vertex)] = std::min(low[static_cast<std::size_t>(f.vertex)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const Frame done = f;
      frames.pop_back();
      if (frames.empty()) break;
      const int parent = frames.back().vertex;
      low[static_cast<std::size_t>(parent)] = std::min(low[static_cast<std::size_t>(parent)], low[static_cast<std::size_t>(done.vertex)]);
      if (low[static_cast<std::size_t>(done.vertex)] >= disc[static_cast<std::size_t>(parent)]) emit_block(done.parent_edge);
    }
  }

  for (int v = 0; v < n; ++v) {
    if (membership[static_cast<std::size_t>(v)] >= 2) tree.cut_vertices.push_back(v);
  }
  for (std::size_t b = 0; b < tree.blocks.size(); ++b) {
    for (int v : tree.blocks[b].vertices) {
      if (membership[static_cast<std::size_t>(v)] >= 2) tree.links.emplace_back(static_cast<int>(b), v);
    }
  }
  return tree;
}

std::optional<SignedCycle> find_frustrated_cycle(const SignedGraph& graph) {
  const int n = graph.num_vertices;
  Incidence inc(graph);
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  std::vector<int> depth(static_cast<std::size_t>(n), 0);
  std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
  std::queue<int> q;
  auto other = [&](int e, int v) {
    const auto& edge = graph.edges[static_cast<std::size_t>(e)];
    return edge.u == v ? edge.v : edge.u;
  };
  for (int root = 0; root < n; ++root) {
    if (side[static_cast<std::size_t>(root)] >= 0) continue;
    side[static_cast<std::size_t>(root)] = 0;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [w, e] : inc.of(u)) {
        const int want = side[static_cast<std::size_t>(u)] ^ parity(graph.edges[static_cast<std::size_t>(e)].sign);
        if (side[static_cast<std::size_t>(w)] < 0) {
          side[static_cast<std::size_t>(w)] = want;
          depth[static_cast<std::size_t>(w)] = depth[static_cast<std::size_t>(u)] + 1;
          parent_edge[static_cast<std::size_t>(w)] = e;
          q.push(w);
          continue;
        }
        if (side[static_cast<std::size_t>(w)] == want) continue;
        // Conflict: tree paths to the lowest common ancestor plus edge e.
        std::vector<int> up_u{u};
        std::vector<Sign> up_u_signs;
        std::vector<int> up_w{w};
        std::vector<Sign> up_w_signs;
        int a = u;
        int b = w;
        while (a != b) {
          if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
            const int pe = parent_edge[static_cast<std::size_t>(a)];
            up_u_signs.push_back(graph.edges[static_cast<std::size_t>(pe)].sign);
            a = other(pe, a);
            up_u.push_back(a);
          } else {
            const int pe = parent_edge[static_cast<std::size_t>(b)];
            up_w_signs.push_back(graph.edges[static_cast<std::size_t>(pe)].sign);
            b = other(pe, b);
            up_w.push_back(b);
          }
        }
        SignedCycle c;
        c.vertices = up_u;  // u ... lca
        c.signs = up_u_signs;
        for (std::size_t i = up_w.size() - 1; i-- > 0;) {
          c.vertices.push_back(up_w[i]);  // down to w
          c.signs.push_back(up_w_signs[i]);
        }
        c.signs.push_back(graph.edges[static_cast<std::size_t>(e)].sign);  // w -> u
        return c;
      }
    }
  }
  return std::nullopt;
}

std::optional<Bipartition> detect_br(const SignedGraph& graph) {
  const int n = graph.num_vertices;
  Incidence inc(graph);
  // Two-colour each component of (V, E_R).
  std::vector<int> color(static_cast<std::size_t>(n), -1);
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int components = 0;
  std::queue<int> q;
  for (int root = 0; root < n; ++root) {
    if (color[static_cast<std::size_t>(root)] >= 0) continue;
    color[static_cast<std::size_t>(root)] = 0;
    component[static_cast<std::size_t>(root)] = components;
    q.push(root);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [w, e] : inc.of(u)) {
        if (graph.edges[static_cast<std::size_t>(e)].sign != Sign::repulsive) continue;
        if (color[static_cast<std::size_t>(w)] < 0) {
          color[static_cast<std::size_t>(w)] = 1 - color[static_cast<std::size_t>(u)];
          component[static_cast<std::size_t>(w)] = components;
          q.push(w);
        } else if (color[static_cast<std::size_t>(w)] == color[static_cast<std::size_t>(u)]) {
          return std::nullopt;
        }
      }
    }
    ++components;
  }
  // Stitch components: an associative edge puts both ends on one side.
  ParityUnionFind uf(components);
  for (const auto& e : graph.edges) {
    if (e.sign != Sign::associative) continue;
    const int rel = color[static_cast<std::size_t>(e.u)] ^ color[static_cast<std::size_t>(e.v)];
    if (!uf.unite(component[static_cast<std::size_t>(e.u)], component[static_cast<std::size_t>(e.v)], rel)) {
      return std::nullopt;
    }
  }
  std::vector<int> side(static_cast<std::size_t>(n));
  std::vector<int> root_offset(static_cast<std::size_t>(components), -1);
  Bipartition out;
  for (int v = 0; v < n; ++v) {
    auto [root, p] = uf.find(component[static_cast<std::size_t>(v)]);
    const int raw = color[static_cast<std::size_t>(v)] ^ p;
    auto& offset = root_offset[static_cast<std::size_t>(root)];
    if (offset < 0) offset = raw;  // smallest vertex of the group lands in V1
    (raw ^ offset ? out.second : out.first).push_back(v);
  }
  return out;
}

std::string_view class_name(const BlockClass& cls) {
  switch (cls.index()) {
    case 0: return "BR";
    case 1: return "Tmn";
    case 2: return "Un";
    default: return "Intractable";
  }
}

BlockClass classify_block(const SignedGraph& block) { return classify_local(block); }

BlockClass classify_block(const SignedGraph& graph, const Block& block) {
  std::vector<int> scratch(static_cast<std::size_t>(graph.num_vertices), -1);
  return globalize(classify_local(localize(graph, block, scratch)), block.vertices);
}

EnodePlan block_enode_plan(const SignedGraph& graph, const Block& block, const BlockClass& cls) {
  EnodePlan plan;
  plan.reserve(block.edges.size());
  int s = -1;
  int t = -1;
  int base_s = 0;
  int base_t = 0;
  if (const auto* tmn = std::get_if<TmnClass>(&cls)) {
    s = tmn->s;
    t = tmn->t;
    base_s = s < t ? 0 : 1;
    base_t = 1 - base_s;
  } else if (const auto* un = std::get_if<UnClass>(&cls)) {
    s = un->s;
    t = un->t;
  }
  for (int ei : block.edges) {
    const auto& e = graph.edges[static_cast<std::size_t>(ei)];
    EnodeForm form = e.sign == Sign::associative ? EnodeForm::f00 : EnodeForm::f01;
    if (s >= 0) {
      auto label = [&](int v) { return v == s ? base_s : base_t; };
      const bool base = (e.u == s && e.v == t) || (e.u == t && e.v == s);
      if (base) {
        form = make_form(label(e.u), label(e.v));
      } else {
        // Apex edges take the opposite base label so each triangle closes.
        const bool u_is_base = e.u == s || e.u == t;
        const int base_vertex = u_is_base ? e.u : e.v;
        const int at_base = 1 - label(base_vertex);
        const int at_apex = e.sign == Sign::associative ? at_base : 1 - at_base;
        form = u_is_base ? make_form(at_base, at_apex) : make_form(at_apex, at_base);
      }
    }
    plan.push_back({e.u, e.v, e.potential, form});
  }
  return plan;
}

const ClassifiedBlock* TractabilityReport::first_intractable() const {
  for (const auto& b : blocks) {
    if (!is_tractable(b.cls)) return &b;
  }
  return nullptr;
}

TractabilityReport classify_signed(const SignedGraph& graph) {
  TractabilityReport report;
  report.graph = graph;
  BlockTree tree = block_decompose(graph);
  report.cut_vertices = std::move(tree.cut_vertices);
  report.plan.resize(graph.edges.size());
  std::vector<int> scratch(static_cast<std::size_t>(graph.num_vertices), -1);
  report.blocks.reserve(tree.blocks.size());
  for (auto& block : tree.blocks) {
    BlockClass cls = globalize(classify_local(localize(graph, block, scratch)), block.vertices);
    report.tractable = report.tractable && is_tractable(cls);
    const EnodePlan plan = block_enode_plan(graph, block, cls);
    for (std::size_t i = 0; i < block.edges.size(); ++i) report.plan[static_cast<std::size_t>(block.edges[i])] = plan[i];
    report.blocks.push_back({std::move(block), std::move(cls)});
  }
  return report;
}

TractabilityReport classify_model(const Model& model, double eps) { return classify_signed(signed_view(model, eps)); }

}  // namespace mapwss
