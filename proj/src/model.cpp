#include "mapwss/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <utility>

namespace mapwss {

namespace {

std::string scope_text(const Model& m, std::span<const int> scope) {
  std::string out = "{";
  for (std::size_t i = 0; i < scope.size(); ++i) {
    if (i) out += ",";
    out += m.name(scope[i]);
  }
  return out + "}";
}

// Decodes a row-major offset into labels aligned with scope.
void decode_offset(const std::vector<Variable>& vars, std::span<const int> scope, std::size_t offset,
                   std::vector<int>& labels) {
  labels.assign(scope.size(), 0);
  for (std::size_t i = scope.size(); i-- > 0;) {
    const auto card = static_cast<std::size_t>(vars[static_cast<std::size_t>(scope[i])].card);
    labels[i] = static_cast<int>(offset % card);
    offset /= card;
  }
}

std::size_t offset_of(const std::vector<Variable>& vars, std::span<const int> scope,
                      std::span<const int> labels) {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < scope.size(); ++i) {
    offset = offset * static_cast<std::size_t>(vars[static_cast<std::size_t>(scope[i])].card) +
             static_cast<std::size_t>(labels[i]);
  }
  return offset;
}

}  // namespace

std::string_view to_string(Sign sign) {
  return sign == Sign::associative ? "associative" : "repulsive";
}

int SignedCycle::repulsive_count() const {
  return static_cast<int>(std::count(signs.begin(), signs.end(), Sign::repulsive));
}

Model::Model(std::vector<Variable> variables, std::vector<Potential> potentials)
    : variables_(std::move(variables)) {
  std::unordered_map<std::string_view, int> seen;
  seen.reserve(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    const auto& var = variables_[i];
    if (var.card < 2) {
      throw Error(ErrorCode::InvalidCardinality,
                  "variable '" + var.name + "' has cardinality " + std::to_string(var.card));
    }
    if (!seen.emplace(var.name, static_cast<int>(i)).second) {
      throw Error(ErrorCode::DuplicateVariable, "variable '" + var.name + "' declared twice");
    }
  }

  std::map<std::vector<int>, std::size_t> by_scope;
  std::vector<int> labels;
  std::vector<int> mapped;
  for (auto& pot : potentials) {
    if (pot.scope.empty()) throw Error(ErrorCode::InvalidScope, "empty potential scope");
    std::size_t expected = 1;
    bool overflow = false;
    for (int v : pot.scope) {
      if (v < 0 || v >= num_variables()) {
        throw Error(ErrorCode::UnknownVariable, "variable index " + std::to_string(v) + " in scope");
      }
      const auto card = static_cast<std::size_t>(variables_[static_cast<std::size_t>(v)].card);
      if (expected > pot.table.size() / card + 1) overflow = true;
      expected *= card;
    }
    std::vector<int> key = pot.scope;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) {
      throw Error(ErrorCode::DuplicateVariable,
                  "scope " + scope_text(*this, pot.scope) + " repeats a variable");
    }
    if (overflow || expected != pot.table.size()) {
      throw Error(ErrorCode::TableSizeMismatch,
                  "scope " + scope_text(*this, pot.scope) + " has " + std::to_string(pot.table.size()) +
                      " entries, expected " + (overflow ? std::string("more") : std::to_string(expected)));
    }
    for (std::size_t i = 0; i < pot.table.size(); ++i) {
      if (!std::isfinite(pot.table[i])) {
        throw Error(ErrorCode::NonFiniteEntry,
                    "scope " + scope_text(*this, pot.scope) + " entry " + std::to_string(i));
      }
    }

    auto [it, inserted] = by_scope.emplace(std::move(key), potentials_.size());
    if (inserted) {
      potentials_.push_back(std::move(pot));
      continue;
    }
    // Same scope set seen before: sum into the first occurrence's ordering.
    auto& target = potentials_[it->second];
    mapped.resize(target.scope.size());
    for (std::size_t off = 0; off < pot.table.size(); ++off) {
      decode_offset(variables_, pot.scope, off, labels);
      for (std::size_t i = 0; i < target.scope.size(); ++i) {
        auto pos = std::find(pot.scope.begin(), pot.scope.end(), target.scope[i]) - pot.scope.begin();
        mapped[i] = labels[static_cast<std::size_t>(pos)];
      }
      target.table[offset_of(variables_, target.scope, mapped)] += pot.table[off];
    }
  }
}

int Model::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

double Model::energy(std::span<const int> labels) const {
  double total = 0.0;
  std::vector<int> local;
  for (const auto& pot : potentials_) {
    local.resize(pot.scope.size());
    for (std::size_t i = 0; i < pot.scope.size(); ++i) local[i] = labels[static_cast<std::size_t>(pot.scope[i])];
    total += pot.table[offset_of(variables_, pot.scope, local)];
  }
  return total;
}

bool Model::is_binary_pairwise() const {
  for (const auto& v : variables_) {
    if (v.card != 2) return false;
  }
  for (const auto& p : potentials_) {
    if (p.scope.size() > 2) return false;
  }
  return true;
}

int Model::find_potential(std::span<const int> scope) const {
  std::vector<int> key(scope.begin(), scope.end());
  std::sort(key.begin(), key.end());
  for (std::size_t i = 0; i < potentials_.size(); ++i) {
    const auto& s = potentials_[i].scope;
    if (s.size() != key.size()) continue;
    std::vector<int> other = s;
    std::sort(other.begin(), other.end());
    if (other == key) return static_cast<int>(i);
  }
  return -1;
}

Model validate_model(const RawModel& raw) {
  std::unordered_map<std::string, int> index;
  for (std::size_t i = 0; i < raw.variables.size(); ++i) {
    if (!index.emplace(raw.variables[i].name, static_cast<int>(i)).second) {
      throw Error(ErrorCode::DuplicateVariable, "variable '" + raw.variables[i].name + "' declared twice");
    }
  }
  std::vector<Potential> pots;
  pots.reserve(raw.potentials.size());
  for (const auto& rp : raw.potentials) {
    Potential p;
    for (const auto& name : rp.scope) {
      auto it = index.find(name);
      if (it == index.end()) throw Error(ErrorCode::UnknownVariable, "scope names undeclared variable '" + name + "'");
      p.scope.push_back(it->second);
    }
    p.table = rp.table;
    pots.push_back(std::move(p));
  }
  return Model(raw.variables, std::move(pots));
}

std::size_t table_size(const Model& model, std::span<const int> scope) {
  std::size_t n = 1;
  for (int v : scope) n *= static_cast<std::size_t>(model.card(v));
  return n;
}

std::size_t table_offset(const Model& model, std::span<const int> scope, std::span<const int> labels) {
  return offset_of(model.variables(), scope, labels);
}

EdgeTable oriented_table(const Potential& pairwise) {
  const auto& t = pairwise.table;
  if (pairwise.scope[0] < pairwise.scope[1]) return {t[0], t[1], t[2], t[3]};
  return {t[0], t[2], t[1], t[3]};
}

void require_binary_pairwise(const Model& model) {
  if (!model.is_binary_pairwise()) {
    throw Error(ErrorCode::NotBinaryPairwise, "model has a non-binary variable or a scope of size > 2");
  }
}

SignedGraph signed_view(const Model& model, double eps) {
  require_binary_pairwise(model);
  SignedGraph g;
  g.num_vertices = model.num_variables();
  const auto& pots = model.potentials();
  for (std::size_t i = 0; i < pots.size(); ++i) {
    if (pots[i].scope.size() != 2) continue;
    const double a = associativity(oriented_table(pots[i]));
    if (std::abs(a) <= eps) continue;
    const auto [lo, hi] = std::minmax(pots[i].scope[0], pots[i].scope[1]);
    g.edges.push_back({lo, hi, a > 0 ? Sign::associative : Sign::repulsive, static_cast<int>(i), a});
  }
  return g;
}

Model flip_variables(const Model& model, std::span<const int> flip) {
  require_binary_pairwise(model);
  std::vector<bool> flipped(static_cast<std::size_t>(model.num_variables()), false);
  for (int v : flip) {
    if (v < 0 || v >= model.num_variables()) {
      throw Error(ErrorCode::UnknownVariable, "flip set names variable index " + std::to_string(v));
    }
    flipped[static_cast<std::size_t>(v)] = true;
  }
  std::vector<Potential> pots = model.potentials();
  for (auto& pot : pots) {
    // Binary tables: flipping scope position i xors bit (size-1-i) of the offset.
    std::size_t mask = 0;
    for (std::size_t i = 0; i < pot.scope.size(); ++i) {
      if (flipped[static_cast<std::size_t>(pot.scope[i])]) mask |= std::size_t{1} << (pot.scope.size() - 1 - i);
    }
    if (mask == 0) continue;
    std::vector<double> table(pot.table.size());
    for (std::size_t off = 0; off < table.size(); ++off) table[off] = pot.table[off ^ mask];
    pot.table = std::move(table);
  }
  return Model(model.variables(), std::move(pots));
}

}  // namespace mapwss
