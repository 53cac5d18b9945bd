#include "mapwss/perfection.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

namespace mapwss {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int v) { return Mask{1} << v; }

class HoleSearch {
 public:
  explicit HoleSearch(const Graph& g) : n_(g.size()), adj_(static_cast<std::size_t>(g.size()), 0) {
    for (int u = 0; u < n_; ++u) {
      for (int v : g.neighbors(u)) adj_[static_cast<std::size_t>(u)] |= bit(v);
    }
  }

  std::optional<std::vector<int>> run() {
    for (int start = 0; start < n_; ++start) {
      path_.assign(1, start);
      // Vertices below `start` are excluded so each hole is found from its minimum.
      const Mask below = bit(start) - 1;
      for (int first : neighbors_above(start)) {
        path_.resize(1);
        path_.push_back(first);
        if (extend(below | bit(start) | bit(first), 0)) return path_;
      }
    }
    return std::nullopt;
  }

 private:
  std::vector<int> neighbors_above(int v) const {
    std::vector<int> out;
    Mask m = adj_[static_cast<std::size_t>(v)] & ~(bit(v + 1) - 1);
    while (m) {
      out.push_back(std::countr_zero(m));
      m &= m - 1;
    }
    return out;
  }

  // `blocked` holds excluded vertices, path vertices, and neighbours of the
  // interior vertices p1..p(k-1); `interior` is the neighbourhood union of
  // the interior only.
  bool extend(Mask blocked, Mask interior) {
    const int start = path_.front();
    const int last = path_.back();
    const Mask start_adj = adj_[static_cast<std::size_t>(start)];
    Mask candidates = adj_[static_cast<std::size_t>(last)] & ~blocked;
    while (candidates) {
      const int w = std::countr_zero(candidates);
      candidates &= candidates - 1;
      if (start_adj & bit(w)) {
        // Closing vertex: must see no interior vertex.
        const std::size_t length = path_.size() + 1;
        if (length >= 5 && length % 2 == 1 && !(interior & bit(w)) && path_[1] < w) {
          path_.push_back(w);
          return true;
        }
        continue;
      }
      path_.push_back(w);
      const Mask grown = interior | adj_[static_cast<std::size_t>(last)];
      if (static_cast<int>(path_.size()) < n_ &&
          extend(blocked | bit(w) | adj_[static_cast<std::size_t>(last)], grown)) {
        return true;
      }
      path_.pop_back();
    }
    return false;
  }

  int n_;
  std::vector<Mask> adj_;
  std::vector<int> path_;
};

void check_cap(const Graph& graph, int max_vertices) {
  const int cap = std::min(max_vertices, 64);
  if (graph.size() > cap) {
    throw Error(ErrorCode::TooLarge, "graph has " + std::to_string(graph.size()) + " vertices, cap is " +
                                         std::to_string(cap));
  }
}

int label_at(int vertex, int other, EnodeForm form) {
  return vertex < other ? lower_label(form) : higher_label(form);
}

}  // namespace

std::string_view to_string(WitnessKind kind) {
  switch (kind) {
    case WitnessKind::none: return "none";
    case WitnessKind::odd_hole: return "odd_hole";
    case WitnessKind::odd_antihole: return "odd_antihole";
  }
  return "none";
}

std::optional<std::vector<int>> find_odd_hole(const Graph& graph, int max_vertices) {
  check_cap(graph, max_vertices);
  return HoleSearch(graph).run();
}

PerfectionVerdict is_perfect_small(const Graph& graph, int max_vertices) {
  check_cap(graph, max_vertices);
  if (auto hole = HoleSearch(graph).run()) return {false, WitnessKind::odd_hole, std::move(*hole)};
  if (auto anti = HoleSearch(graph.complement()).run()) return {false, WitnessKind::odd_antihole, std::move(*anti)};
  return {};
}

PerfectionVerdict binary_pairwise_perfection(const Nmrf& pruned, int max_vertices) {
  std::map<int, int> per_group;
  for (const auto& node : pruned.nodes) {
    if (pruned.singleton_group(node.group)) continue;
    if (node.assignment.size() != 2) {
      throw Error(ErrorCode::NotSingleEnodeForm, "group " + std::to_string(node.group) + " is not pairwise");
    }
    if (++per_group[node.group] > 1) {
      throw Error(ErrorCode::NotSingleEnodeForm,
                  "group " + std::to_string(node.group) + " keeps more than one enode");
    }
  }
  check_cap(pruned.adjacency, max_vertices);
  if (auto hole = HoleSearch(pruned.adjacency).run()) return {false, WitnessKind::odd_hole, std::move(*hole)};
  return {};
}

std::vector<HoleNode> cycle_to_induced_hole(const SignedCycle& cycle, std::span<const EnodeForm> forms) {
  const std::size_t k = cycle.vertices.size();
  if (k < 3 || forms.size() != k || (!cycle.signs.empty() && cycle.signs.size() != k)) {
    throw Error(ErrorCode::InvalidArgument, "cycle needs >= 3 vertices and one form per edge");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (!cycle.signs.empty() && form_sign(forms[i]) != cycle.signs[i]) {
      throw Error(ErrorCode::SignMismatch, "form of cycle edge " + std::to_string(i) + " contradicts its sign");
    }
  }
  std::vector<HoleNode> hole;
  for (std::size_t i = 0; i < k; ++i) {
    const int a = cycle.vertices[i];
    const int b = cycle.vertices[(i + 1) % k];
    const int c = cycle.vertices[(i + 2) % k];
    const int la = label_at(a, b, forms[i]);
    const int lb = label_at(b, a, forms[i]);
    Assignment enode = a < b ? Assignment{{a, la}, {b, lb}} : Assignment{{b, lb}, {a, la}};
    hole.push_back({static_cast<int>(i), std::move(enode)});
    const int next = label_at(b, c, forms[(i + 1) % k]);
    if (next == lb) hole.push_back({-1, {{b, 1 - lb}}});
  }
  return hole;
}

}  // namespace mapwss
