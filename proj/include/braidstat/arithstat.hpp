#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "braidstat/iwasawa.hpp"
#include "braidstat/laurent.hpp"
#include "braidstat/rational.hpp"

namespace braidstat {

// ---------------------------------------------------------------------------
// Compositions into powers of p

/// Ordered tuple of positive parts.
using Composition = std::vector<std::int64_t>;

struct CompositionResult {
  BigInt count;
  std::vector<Composition> list;  // filled only when requested
};

/// Counts ordered j-tuples (p^a_1, ..., p^a_j) summing to lam, via
/// c(j, m) = sum_{p^a <= m} c(j - 1, m - p^a), c(0, 0) = 1. With `list`, also
/// enumerates them in lexicographic order of the exponent tuple (a_1, ..., a_j).
CompositionResult compositions_p_power(int j, std::int64_t lam, OddPrime p, bool list = false);

/// Table of c(j, m) for 0 <= j <= max_parts and 0 <= m <= max_sum, stored
/// sparsely (only reachable sums), so large sums with few parts stay cheap.
class PowerCompositionTable {
 public:
  PowerCompositionTable(int max_parts, std::int64_t max_sum, OddPrime p);
  BigInt count(int parts, std::int64_t sum) const;

 private:
  std::int64_t max_sum_;
  std::vector<std::map<std::int64_t, BigInt>> layers_;
};

/// #A^(j)_{n-1, lam} = C(n-1, j) * #C_{j, lam}.
BigInt a_set_count(int n, int j, std::int64_t lam, OddPrime p);

/// p-powers p^0, p^1, ... not exceeding bound.
std::vector<std::int64_t> p_powers_upto(std::int64_t bound, OddPrime p);

// ---------------------------------------------------------------------------
// Limiting densities

/// Density of {r : lambda(F_r) = lam}: 1/2 at 0, (1 - 1/p) / (2 p^i) at p^i,
/// 0 elsewhere.
Rational density_F(std::int64_t lam, OddPrime p);

/// Product of density_F over the entries.
Rational density_tuple(std::span<const std::int64_t> lams, OddPrime p);

/// Sum of density_tuple over all tuples of n-1 entries from {0, 1, p, p^2, ...}
/// adding up to lam.
Rational density_n_sum(int n, std::int64_t lam, OddPrime p);

/// density_n_sum for every reachable lam <= max_lam (unreachable values have
/// density 0 and are absent from the map).
std::map<std::int64_t, Rational> density_n_sum_table(int n, OddPrime p, std::int64_t max_lam);

/// The closed combinatorial formula as printed for lam >= 1:
///   1 / (2^{n-1} p^lam) * sum_{j=1}^{n-1} C(n-1, j) (1 - 1/p)^j #C_{j, lam}.
Rational density_n_closed_paper(int n, std::int64_t lam, OddPrime p);

/// density_n_closed_paper extended by 1/2^{n-1} at lam = 0, which is what both
/// theoretical columns report for lam = 0. Uses a precomputed table when given.
Rational density_n_closed_column(int n, std::int64_t lam, OddPrime p,
                                 const PowerCompositionTable* table = nullptr);

}  // namespace braidstat
