#include "mapwss/submodular.hpp"

#include <bit>
#include <cmath>

#include "mapwss/simplex.hpp"

namespace mapwss {

namespace {

Subset full_set(int k) { return (Subset{1} << k) - 1; }

// Labels of all variables in setting x, variable 0 first.
int label(std::uint32_t x, int var, int k) { return static_cast<int>((x >> (k - 1 - var)) & 1U); }

double zero_or_clamped(double v, double eps, const char* what) {
  if (v < -eps) throw Error(ErrorCode::NotSupermodular, std::string("negative ") + what + " weight");
  return v < 0.0 ? 0.0 : v;
}

}  // namespace

HighOrderPotential HighOrderPotential::from_table(std::vector<double> table) {
  const std::size_t size = table.size();
  if (size < 4 || !std::has_single_bit(size) || size > (std::size_t{1} << kMaxOrder)) {
    throw Error(ErrorCode::InvalidArgument, "table length must be 2^k with 2 <= k <= 10");
  }
  for (std::size_t i = 0; i < size; ++i) {
    if (!std::isfinite(table[i])) throw Error(ErrorCode::NonFiniteEntry, "entry " + std::to_string(i) + " is not finite");
  }
  return {std::countr_zero(size), std::move(table)};
}

std::uint32_t setting_of(Subset ones, int k) {
  std::uint32_t x = 0;
  for (int i = 0; i < k; ++i) {
    if (ones >> i & 1U) x |= std::uint32_t{1} << (k - 1 - i);
  }
  return x;
}

double supermodularity(const HighOrderPotential& psi, int i, int j, std::span<const int> rest) {
  const int k = psi.k;
  if (i == j || i < 0 || j < 0 || i >= k || j >= k || static_cast<int>(rest.size()) != k - 2) {
    throw Error(ErrorCode::BadIndices, "need two distinct variables below k and k-2 fixed labels");
  }
  Subset ones = 0;
  std::size_t r = 0;
  for (int v = 0; v < k; ++v) {
    if (v == i || v == j) continue;
    const int l = rest[r++];
    if (l != 0 && l != 1) throw Error(ErrorCode::BadIndices, "fixed labels must be 0 or 1");
    if (l) ones |= Subset{1} << v;
  }
  const Subset bi = Subset{1} << i;
  const Subset bj = Subset{1} << j;
  auto at = [&](Subset s) { return psi.at(setting_of(s, k)); };
  return at(ones) + at(ones | bi | bj) - at(ones | bi) - at(ones | bj);
}

std::vector<Projection> projections(const HighOrderPotential& psi) {
  std::vector<Projection> out;
  const int k = psi.k;
  std::vector<int> rest(static_cast<std::size_t>(k - 2));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (std::uint32_t r = 0; r < (1U << (k - 2)); ++r) {
        for (int p = 0; p < k - 2; ++p) rest[static_cast<std::size_t>(p)] = label(r, p, k - 2);
        out.push_back({i, j, rest, supermodularity(psi, i, j, rest)});
      }
    }
  }
  return out;
}

std::optional<Projection> supermodularity_violation(const HighOrderPotential& psi, double eps) {
  for (auto& p : projections(psi)) {
    if (p.value < -eps) return p;
  }
  return std::nullopt;
}

double alpha(const HighOrderPotential& psi) {
  double sum = 0.0;
  for (std::uint32_t x = 0; x < psi.table.size(); ++x) sum += (std::popcount(x) % 2 ? -1.0 : 1.0) * psi.table[x];
  return sum;
}

double IndicatorRepresentation::evaluate(std::uint32_t x) const {
  Subset ones = 0;
  for (int i = 0; i < k; ++i) {
    if (label(x, i, k)) ones |= Subset{1} << i;
  }
  const Subset zeros = full_set(k) & ~ones;
  double v = constant;
  for (auto [y, w] : zero_weights) {
    if ((y & zeros) == y) v += w;
  }
  for (auto [y, w] : one_weights) {
    if ((y & ones) == y) v += w;
  }
  return v;
}

IndicatorRepresentation construct_k3(const HighOrderPotential& psi, double eps) {
  if (psi.k != 3) throw Error(ErrorCode::InvalidArgument, "construction is for order 3");
  if (auto bad = supermodularity_violation(psi, eps)) {
    throw Error(ErrorCode::NotSupermodular, "projection (" + std::to_string(bad->i) + "," + std::to_string(bad->j) +
                                                ") has supermodularity " + std::to_string(bad->value));
  }
  auto at = [&](Subset ones) { return psi.at(setting_of(ones, 3)); };
  const double a = alpha(psi);
  IndicatorRepresentation rep;
  rep.k = 3;
  if (a >= 0) {
    // All-zero indicators, anchored at psi_111.
    rep.constant = at(0b111);
    rep.zero_weights[0b111] = a;
    for (int i = 0; i < 3; ++i) {
      const Subset y = 0b111 & ~(Subset{1} << i);  // the pair without i, which stays at 1
      const std::vector<int> rest{1};
      rep.zero_weights[y] =
          zero_or_clamped(supermodularity(psi, std::countr_zero(y), 31 - std::countl_zero(y), rest), eps, "pair");
    }
    for (int i = 0; i < 3; ++i) {
      rep.zero_weights[Subset{1} << i] = at(0b111 & ~(Subset{1} << i)) - rep.constant;
    }
  } else {
    rep.constant = at(0);
    rep.one_weights[0b111] = -a;
    for (int i = 0; i < 3; ++i) {
      const Subset y = 0b111 & ~(Subset{1} << i);
      const std::vector<int> rest{0};
      rep.one_weights[y] =
          zero_or_clamped(supermodularity(psi, std::countr_zero(y), 31 - std::countl_zero(y), rest), eps, "pair");
    }
    for (int i = 0; i < 3; ++i) rep.one_weights[Subset{1} << i] = at(Subset{1} << i) - rep.constant;
  }
  return rep;
}

FeasibilityVerdict representation_feasible(const HighOrderPotential& psi, double eps) {
  const int k = psi.k;
  if (k > kMaxFeasibleOrder) {
    throw Error(ErrorCode::TooLarge, "feasibility search is capped at order " + std::to_string(kMaxFeasibleOrder));
  }
  FeasibilityVerdict verdict;
  verdict.alpha = alpha(psi);
  if (auto bad = supermodularity_violation(psi, eps)) {
    verdict.reason = InfeasibleReason::not_supermodular;
    verdict.violation = std::move(bad);
    return verdict;
  }
  // For even k, alpha equals Z_X + A_X, so it cannot be negative.
  if (k >= 4 && k % 2 == 0 && verdict.alpha < -eps) {
    verdict.reason = InfeasibleReason::negative_alpha;
    return verdict;
  }

  // Columns: c+, c-, (Z_i+, Z_i-) per variable, then Z_Y, A_Y for |Y| >= 2.
  std::vector<Subset> multi;
  for (Subset y = 1; y <= full_set(k); ++y) {
    if (std::popcount(y) >= 2) multi.push_back(y);
  }
  const std::size_t ncols = 2 + 2 * static_cast<std::size_t>(k) + 2 * multi.size();
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  for (std::uint32_t x = 0; x < psi.table.size(); ++x) {
    std::vector<double> row(ncols, 0.0);
    Subset ones = 0;
    for (int i = 0; i < k; ++i) {
      if (label(x, i, k)) ones |= Subset{1} << i;
    }
    const Subset zeros = full_set(k) & ~ones;
    row[0] = 1.0;
    row[1] = -1.0;
    for (int i = 0; i < k; ++i) {
      if (zeros >> i & 1U) {
        row[2 + 2 * static_cast<std::size_t>(i)] = 1.0;
        row[3 + 2 * static_cast<std::size_t>(i)] = -1.0;
      }
    }
    const std::size_t base = 2 + 2 * static_cast<std::size_t>(k);
    for (std::size_t m = 0; m < multi.size(); ++m) {
      if ((multi[m] & zeros) == multi[m]) row[base + 2 * m] = 1.0;
      if ((multi[m] & ones) == multi[m]) row[base + 2 * m + 1] = 1.0;
    }
    rows.push_back(std::move(row));
    rhs.push_back(psi.table[x]);
  }
  const auto sol = feasible_point(rows, rhs, 1e-10);
  if (!sol) {
    verdict.reason = InfeasibleReason::no_solution;
    return verdict;
  }
  IndicatorRepresentation rep;
  rep.k = k;
  rep.constant = (*sol)[0] - (*sol)[1];
  for (int i = 0; i < k; ++i) {
    const double z = (*sol)[2 + 2 * static_cast<std::size_t>(i)] - (*sol)[3 + 2 * static_cast<std::size_t>(i)];
    if (z != 0.0) rep.zero_weights[Subset{1} << i] = z;
  }
  const std::size_t base = 2 + 2 * static_cast<std::size_t>(k);
  for (std::size_t m = 0; m < multi.size(); ++m) {
    if ((*sol)[base + 2 * m] > 0.0) rep.zero_weights[multi[m]] = (*sol)[base + 2 * m];
    if ((*sol)[base + 2 * m + 1] > 0.0) rep.one_weights[multi[m]] = (*sol)[base + 2 * m + 1];
  }
  verdict.feasible = true;
  verdict.representation = std::move(rep);
  return verdict;
}

std::vector<Potential> indicator_potentials(const IndicatorRepresentation& rep, std::span<const int> scope) {
  if (static_cast<int>(scope.size()) != rep.k) {
    throw Error(ErrorCode::InvalidArgument, "scope length must equal the order");
  }
  std::vector<Potential> out;
  auto emit = [&](Subset y, double w, bool ones) {
    if (w == 0.0) return;
    Potential p;
    for (int i = 0; i < rep.k; ++i) {
      if (y >> i & 1U) p.scope.push_back(scope[static_cast<std::size_t>(i)]);
    }
    p.table.assign(std::size_t{1} << p.scope.size(), 0.0);
    (ones ? p.table.back() : p.table.front()) = w;
    out.push_back(std::move(p));
  };
  for (auto [y, w] : rep.zero_weights) emit(y, w, false);
  for (auto [y, w] : rep.one_weights) emit(y, w, true);
  if (rep.constant != 0.0) out.push_back({{scope[0]}, {rep.constant, rep.constant}});
  return out;
}

}  // namespace mapwss
