#include "mapwss/simplex.hpp"

#include <cmath>

#include "mapwss/error.hpp"

namespace mapwss {

std::optional<std::vector<double>> feasible_point(const std::vector<std::vector<double>>& a,
                                                  const std::vector<double>& b, double tol) {
  const std::size_t m = a.size();
  if (b.size() != m) throw Error(ErrorCode::InvalidArgument, "right-hand side length differs from row count");
  const std::size_t n = m == 0 ? 0 : a[0].size();
  for (const auto& row : a) {
    if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "ragged constraint matrix");
  }
  if (m == 0) return std::vector<double>(n, 0.0);

  // Columns: n structural, m artificial, then the right-hand side.
  const std::size_t cols = n + m + 1;
  std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double s = b[i] < 0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = s * a[i][j];
    t[i][n + i] = 1.0;
    t[i][cols - 1] = s * b[i];
    basis[i] = n + i;
  }
  // Objective row: minimise the sum of artificials, expressed in non-basics.
  auto& obj = t[m];
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j < n || j == cols - 1) obj[j] -= t[i][j];
    }
  }

  auto pivot = [&](std::size_t r, std::size_t c) {
    const double p = t[r][c];
    for (double& x : t[r]) x /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || t[i][c] == 0.0) continue;
      const double f = t[i][c];
      for (std::size_t j = 0; j < cols; ++j) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  };

  for (std::size_t iter = 0; iter < 50000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (obj[j] < -tol) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][enter] > tol) {
        const double ratio = t[i][cols - 1] / t[i][enter];
        if (leave == m || ratio < best - tol || (std::abs(ratio - best) <= tol && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave == m) break;  // unbounded direction cannot occur in phase I
    pivot(leave, enter);
  }

  double scale = 1.0;
  for (double v : b) scale = std::max(scale, std::abs(v));
  if (-obj[cols - 1] > tol * scale * static_cast<double>(m)) return std::nullopt;

  std::vector<double> x(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) x[basis[i]] = std::max(0.0, t[i][cols - 1]);
  }
  return x;
}

}  // namespace mapwss
