#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "braidstat/braid.hpp"
#include "braidstat/iwasawa.hpp"
#include "braidstat/rational.hpp"

#include "json.hpp"

namespace braidstat {

inline constexpr std::uint64_t kDefaultTupleBudget = 100'000'000;

struct CensusOptions {
  unsigned workers = 1;
  std::uint64_t budget = kDefaultTupleBudget;  // max lattice points for exhaustive runs
  // Fraction of tuples re-checked through Burau -> complete -> invariants_exact.
  // 0 disables the slow check.
  double verify_slow_fraction = 0.0;
  std::uint64_t verify_seed = 0;
};

enum class CensusMode { Exhaustive, MonteCarlo };

/// Empirical lambda distribution over the lattice points k in Z_{>=0}^{n-1}
/// with sum(k) <= x, plus theoretical columns for every observed finite lambda.
/// Tuples with a zero entry have Delta = 0 and land in the infinite bucket.
struct CensusReport {
  int n = 2;
  std::int64_t p = 3;
  std::int64_t x = 0;
  CensusMode mode = CensusMode::Exhaustive;
  std::uint64_t total = 0;
  std::map<ExtendedNat, std::uint64_t> buckets;
  std::map<std::uint64_t, Rational> theory_sum;
  std::map<std::uint64_t, Rational> theory_closed;
  std::optional<std::uint64_t> seed;     // Monte-Carlo only
  std::optional<std::uint64_t> samples;  // Monte-Carlo only
  std::optional<std::uint64_t> slow_verified;  // tuples re-checked by the exact pipeline

  friend bool operator==(const CensusReport&, const CensusReport&) = default;
};

/// Number of lattice points of the simplex sum(k) <= x in dimension n - 1,
/// C(x + n - 1, n - 1).
BigInt lattice_point_count(int n, std::int64_t x);

/// The idx-th tuple (0-based) of the simplex in lexicographic order.
FamilyTuple unrank_tuple(int n, std::int64_t x, const BigInt& idx);

/// Enumerates every tuple; partitioned over the first coordinate across
/// workers with a deterministic merge. Throws BudgetExceeded when the lattice
/// point count exceeds options.budget.
CensusReport census_exhaustive(int n, OddPrime p, std::int64_t x, const CensusOptions& options = {});

/// Classifies `samples` tuples drawn uniformly from the simplex. Sample i is
/// decoded from a uniform index drawn from CounterRng(seed, i), so the report
/// depends only on (n, p, x, samples, seed).
CensusReport census_montecarlo(int n, OddPrime p, std::int64_t x, std::uint64_t samples, std::uint64_t seed,
                               const CensusOptions& options = {});

/// Fills theory_sum / theory_closed for every finite observed lambda.
void attach_theory(CensusReport& report);

enum class CloserFormula { Sum, Closed, Tie };

struct CompareRow {
  ExtendedNat lambda;
  std::uint64_t count = 0;
  Rational empirical;
  std::optional<Rational> theory_sum;     // absent for the infinite bucket
  std::optional<Rational> theory_closed;
  std::optional<Rational> dev_sum;
  std::optional<Rational> dev_closed;
  std::optional<CloserFormula> closer;    // set when the two theory columns differ
};

std::vector<CompareRow> compare_report(const CensusReport& report);

std::string_view to_string(CloserFormula c);

nlohmann::ordered_json to_json(const CensusReport& report);
CensusReport census_from_json(const nlohmann::ordered_json& j);

/// Columns: lambda,count,empirical,theory_sum,theory_closed,dev_sum,dev_closed
std::string to_csv(const CensusReport& report);
std::string to_text(const CensusReport& report);

}  // namespace braidstat
