#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "mapwss/model.hpp"

namespace mapwss {

inline constexpr int kMaxOrder = 10;
inline constexpr int kMaxFeasibleOrder = 6;

/// Order-k potential over binary variables 0..k-1.  Entry index is the bit
/// vector x with variable 0 as the most significant bit (last variable
/// fastest).
struct HighOrderPotential {
  int k = 0;
  std::vector<double> table;

  /// Infers k from the table length; throws InvalidArgument / NonFiniteEntry.
  static HighOrderPotential from_table(std::vector<double> table);
  double at(std::uint32_t x) const { return table[x]; }
};

/// Variable subset as a bit mask: bit i is variable i.
using Subset = std::uint32_t;

/// Table index of the setting where exactly the variables in `ones` are 1.
std::uint32_t setting_of(Subset ones, int k);

/// psi(..0..0..) + psi(..1..1..) - psi(..1..0..) - psi(..0..1..) on the
/// (i, j) projection.  `rest` gives the labels of the other variables in
/// ascending order.  Throws BadIndices.
double supermodularity(const HighOrderPotential& psi, int i, int j, std::span<const int> rest);

struct Projection {
  int i = 0;
  int j = 0;
  std::vector<int> rest;
  double value = 0.0;
};

/// Every (i < j, rest) projection in lexicographic order.
std::vector<Projection> projections(const HighOrderPotential& psi);

/// The first projection below -eps, if any.
std::optional<Projection> supermodularity_violation(const HighOrderPotential& psi, double eps = kDefaultEps);
inline bool is_supermodular(const HighOrderPotential& psi, double eps = kDefaultEps) {
  return !supermodularity_violation(psi, eps);
}

/// Sum over x of (-1)^(number of ones in x) * psi_x.
double alpha(const HighOrderPotential& psi);

/// psi_x = constant + sum of Z_Y over Y all-zero in x + sum of A_Y over Y
/// all-one in x.  Weights on |Y| >= 2 are nonnegative; singleton weights
/// may carry either sign.
struct IndicatorRepresentation {
  int k = 0;
  double constant = 0.0;
  std::map<Subset, double> zero_weights;
  std::map<Subset, double> one_weights;

  double evaluate(std::uint32_t x) const;
};

/// Order-3 construction: all-zero indicators when alpha >= 0, all-one
/// indicators otherwise.  Throws NotSupermodular or InvalidArgument (k != 3).
IndicatorRepresentation construct_k3(const HighOrderPotential& psi, double eps = kDefaultEps);

enum class InfeasibleReason { none, not_supermodular, negative_alpha, no_solution };

struct FeasibilityVerdict {
  bool feasible = false;
  InfeasibleReason reason = InfeasibleReason::none;
  std::optional<Projection> violation;
  double alpha = 0.0;
  std::optional<IndicatorRepresentation> representation;
};

/// Whether some nonnegative indicator weights (|Y| >= 2) plus free singleton
/// and constant terms reproduce psi.  Throws TooLarge above order 6.
FeasibilityVerdict representation_feasible(const HighOrderPotential& psi, double eps = kDefaultEps);

/// Potentials over subsets of `scope` (variable indices, one per order)
/// whose sum equals the representation.  The constant rides on scope[0].
std::vector<Potential> indicator_potentials(const IndicatorRepresentation& rep, std::span<const int> scope);

}  // namespace mapwss
