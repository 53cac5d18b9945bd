#pragma once

#include <optional>
#include <vector>

namespace mapwss {

/// Phase-I simplex (dense tableau, Bland's rule): a point x >= 0 with
/// A x = b, or nullopt when none exists.  Rows of A must share one length.
std::optional<std::vector<double>> feasible_point(const std::vector<std::vector<double>>& a,
                                                  const std::vector<double>& b, double tol = 1e-9);

}  // namespace mapwss
