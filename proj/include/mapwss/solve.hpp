#pragma once

#include <string>
#include <string_view>

#include "mapwss/model.hpp"
#include "mapwss/mwss.hpp"

namespace mapwss {

enum class SolveMethod { automatic, bipartite, bnb, blocks };

std::string_view to_string(SolveMethod method);
SolveMethod parse_method(std::string_view text);

struct SolveOptions {
  SolveMethod method = SolveMethod::automatic;
  double eps = kDefaultEps;
  int max_nodes = kDefaultBranchCap;
  // Re-solve with clamps so that ties go to the lexicographically smallest
  // assignment.
  bool lexicographic = true;
};

/// Raised when the topology has a block outside B_R, T_{m,n} and U_n.
class IntractableError : public Error {
 public:
  explicit IntractableError(SignedCycle witness)
      : Error(ErrorCode::IntractableTopology, describe(witness)), witness_(std::move(witness)) {}

  const SignedCycle& witness() const noexcept { return witness_; }

 private:
  static std::string describe(const SignedCycle& c);
  SignedCycle witness_;
};

/// Exact MAP.  bnb compiles the whole model and runs branch and bound under
/// `max_nodes`.  bipartite needs a B_R topology.  blocks (and automatic, for
/// binary pairwise models) conditions on cut vertices and solves every block
/// with the solver its class allows; automatic falls back to bnb for other
/// models.
MapSolution solve_map(const Model& model, const SolveOptions& options = {});

}  // namespace mapwss
