#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mapwss/error.hpp"

namespace mapwss {

/// Default tolerance for associativity sign tests and pruning.
inline constexpr double kDefaultEps = 1e-9;

struct Variable {
  std::string name;
  int card = 2;
};

/// Log-potential over an ordered scope of variable indices.  The table is
/// row-major with the last scope variable varying fastest.
struct Potential {
  std::vector<int> scope;
  std::vector<double> table;
};

/// Potential as read from an external description: scope given by names.
struct RawPotential {
  std::vector<std::string> scope;
  std::vector<double> table;
};

struct RawModel {
  std::vector<Variable> variables;
  std::vector<RawPotential> potentials;
};

/// A validated discrete MRF.  The MAP objective is the sum of all potential
/// values of a configuration.  At most one potential exists per scope set.
class Model {
 public:
  Model() = default;

  /// Validates and merges duplicate scopes (entrywise sum).  Throws Error.
  Model(std::vector<Variable> variables, std::vector<Potential> potentials);

  const std::vector<Variable>& variables() const noexcept { return variables_; }
  const std::vector<Potential>& potentials() const noexcept { return potentials_; }
  int num_variables() const noexcept { return static_cast<int>(variables_.size()); }
  int card(int v) const { return variables_[static_cast<std::size_t>(v)].card; }
  const std::string& name(int v) const { return variables_[static_cast<std::size_t>(v)].name; }

  /// Index of the named variable, or -1.
  int index_of(std::string_view name) const;

  /// Sum of all potentials at a full configuration (one label per variable).
  double energy(std::span<const int> labels) const;

  bool is_binary_pairwise() const;

  /// Potential index with exactly this scope set, or -1.
  int find_potential(std::span<const int> scope) const;

 private:
  std::vector<Variable> variables_;
  std::vector<Potential> potentials_;
};

Model validate_model(const RawModel& raw);

/// Number of entries a table over `scope` must have.
std::size_t table_size(const Model& model, std::span<const int> scope);

/// Row-major offset of `labels` (aligned with `scope`) in a table.
std::size_t table_offset(const Model& model, std::span<const int> scope, std::span<const int> labels);

/// 2x2 edge table in the order t00, t01, t10, t11.
using EdgeTable = std::array<double, 4>;

/// psi00 + psi11 - psi01 - psi10.
constexpr double associativity(const EdgeTable& t) noexcept { return t[0] + t[3] - t[1] - t[2]; }

/// Table of a pairwise potential, oriented so that the lower variable index
/// is the row variable.
EdgeTable oriented_table(const Potential& pairwise);

enum class Sign : std::uint8_t { associative, repulsive };

std::string_view to_string(Sign sign);

struct SignedEdge {
  int u = 0;  // u < v
  int v = 0;
  Sign sign = Sign::associative;
  int potential = -1;  // index into Model::potentials(), -1 if synthetic
  double associativity = 0.0;
};

struct SignedGraph {
  int num_vertices = 0;
  std::vector<SignedEdge> edges;
};

/// A closed walk v0 - v1 - ... - v(k-1) - v0 with the sign of each edge
/// (v_i, v_{i+1 mod k}).
struct SignedCycle {
  std::vector<int> vertices;
  std::vector<Sign> signs;

  int repulsive_count() const;
  bool frustrated() const { return repulsive_count() % 2 == 1; }
};

void require_binary_pairwise(const Model& model);

/// Signed topology of a binary pairwise model.  Edges with
/// |associativity| <= eps are omitted.
SignedGraph signed_view(const Model& model, double eps = kDefaultEps);

/// Replaces each X_i in `flip` by 1 - X_i, permuting every table so that the
/// energy of each configuration maps exactly onto its flipped image.
Model flip_variables(const Model& model, std::span<const int> flip);

}  // namespace mapwss
