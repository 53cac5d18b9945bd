#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mapwss/graph.hpp"
#include "mapwss/model.hpp"

namespace mapwss {

/// The single surviving entry of a reparameterized binary edge, written as
/// (label of lower-index variable, label of higher-index variable).
enum class EnodeForm : std::uint8_t { f00, f01, f10, f11 };

constexpr int lower_label(EnodeForm f) noexcept { return static_cast<int>(f) >> 1; }
constexpr int higher_label(EnodeForm f) noexcept { return static_cast<int>(f) & 1; }
constexpr EnodeForm make_form(int lower, int higher) noexcept {
  return static_cast<EnodeForm>((lower << 1) | higher);
}
constexpr Sign form_sign(EnodeForm f) noexcept {
  return lower_label(f) == higher_label(f) ? Sign::associative : Sign::repulsive;
}
std::string_view to_string(EnodeForm f);
EnodeForm parse_form(std::string_view text);

struct PlannedEdge {
  int u = 0;  // u < v
  int v = 0;
  int potential = -1;
  EnodeForm form = EnodeForm::f00;
};

using EnodePlan = std::vector<PlannedEdge>;

/// Result of rewriting one edge so that only `form` keeps a nonzero entry:
/// psi(x, y) = weight * [(x, y) == form] + row_delta[x] + col_delta[y] + constant.
/// Rows are indexed by the lower-index variable.
struct EdgeReparam {
  EnodeForm form = EnodeForm::f00;
  double weight = 0.0;
  std::array<double, 2> row_delta{};
  std::array<double, 2> col_delta{};
  double constant = 0.0;
};

EdgeReparam reparameterize_edge(const EdgeTable& table, EnodeForm target, double eps = kDefaultEps);

/// (variable, label) pairs sorted by variable.
using Assignment = std::vector<std::pair<int, int>>;

struct NmrfNode {
  int id = 0;
  int group = 0;
  Assignment assignment;
  double weight = 0.0;
};

struct CliqueGroup {
  std::vector<int> scope;  // ascending variable indices
};

/// Weighted conflict graph.  Groups 0..n-1 are the singleton groups of the
/// variables; further groups follow the model's potentials.  `adjacency` is
/// indexed by position in `nodes`; node ids are stable across prune and
/// condition.  `pruned` records removed zero-weight nodes for completion.
struct Nmrf {
  std::vector<std::string> variable_names;
  std::vector<CliqueGroup> groups;
  std::vector<NmrfNode> nodes;
  Graph adjacency;
  std::vector<NmrfNode> pruned;
  double constant = 0.0;

  int num_variables() const noexcept { return static_cast<int>(variable_names.size()); }
  bool singleton_group(int g) const { return groups[static_cast<std::size_t>(g)].scope.size() == 1; }
};

bool nodes_conflict(const NmrfNode& a, const NmrfNode& b);

/// One node per (scope, assignment); each group shifted so its minimum is 0,
/// the removed minima accumulated in `constant`.
Nmrf build_nmrf(const Model& model);

/// Induced subgraph on nodes with weight > eps.
Nmrf prune(const Nmrf& nmrf, double eps = kDefaultEps);

/// Deletes every node (present or pruned) that disagrees with a clamped
/// label.  clamps[v] < 0 leaves v free.
Nmrf condition(const Nmrf& nmrf, std::span<const int> clamps);

WeightedGraph weighted_graph(const Nmrf& nmrf);

/// Associative edges keep 00; repulsive edges keep 01.
EnodePlan default_enode_plan(const SignedGraph& graph);

/// Rewrites every planned edge into its single-entry form, moving the rest
/// into singleton potentials.  Unplanned pairwise potentials with
/// |associativity| <= eps are reduced to their (1,1) residual.  The total
/// energy of every configuration is unchanged.
Model apply_enode_plan(const Model& model, const EnodePlan& plan, double eps = kDefaultEps);

struct CompiledNmrf {
  Model reparameterized;
  Nmrf nmrf;  // pruned
};

CompiledNmrf compile_binary_pairwise(const Model& model, const EnodePlan& plan, double eps = kDefaultEps);

/// Both snodes of every variable plus one enode per planned edge: the union
/// of all pruned NMRFs the plan can produce over every choice of singleton
/// potentials.  Snode weights are 0, enode weights 1.
Nmrf envelope_nmrf(const Model& model, const EnodePlan& plan);

/// Present node with exactly this assignment, or nullptr.
const NmrfNode* find_node(const Nmrf& nmrf, std::span<const std::pair<int, int>> assignment);

}  // namespace mapwss
