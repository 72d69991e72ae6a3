#include <cmath>
#include <functional>

#include "braidstat/burau.hpp"
#include "braidstat/census.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace braidstat;
using support::thrown_code;

namespace {

ExtendedNat fin(std::uint64_t v) { return ExtendedNat::finite(v); }
const ExtendedNat inf = ExtendedNat::infinity();

// Lexicographic enumeration of the simplex sum(k) <= x in dimension n - 1.
void for_each_tuple(int n, std::int64_t x, const std::function<void(const std::vector<std::int64_t>&)>& fn) {
  std::vector<std::int64_t> k(static_cast<std::size_t>(n - 1), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t c, std::int64_t rem) {
    if (c == k.size()) {
      fn(k);
      return;
    }
    for (std::int64_t v = 0; v <= rem; ++v) {
      k[c] = v;
      rec(c + 1, rem - v);
    }
  };
  rec(0, x);
}

// Buckets computed through the exact pipeline: product formula, completion and
// coefficient valuations.
std::map<ExtendedNat, std::uint64_t> census_oracle(int n, long p, std::int64_t x) {
  std::map<ExtendedNat, std::uint64_t> b;
  for_each_tuple(n, x, [&](const std::vector<std::int64_t>& k) {
    ++b[invariants_exact(complete(alexander_family_product(FamilyTuple(k))), OddPrime(p)).lambda];
  });
  return b;
}

}  // namespace

TEST_CASE("census_exhaustive examples") {
  auto r = census_exhaustive(2, OddPrime(3), 12);
  CHECK(r.total == 13);
  CHECK(r.buckets == std::map<ExtendedNat, std::uint64_t>{{inf, 1}, {fin(0), 6}, {fin(1), 4}, {fin(3), 2}});
  r = census_exhaustive(2, OddPrime(3), 0);
  CHECK(r.total == 1);
  CHECK(r.buckets == std::map<ExtendedNat, std::uint64_t>{{inf, 1}});
  CHECK(census_exhaustive(3, OddPrime(3), 2).total == 6);
}

TEST_CASE("property: exhaustive census matches the exact pipeline") {
  CHECK(census_exhaustive(2, OddPrime(3), 40).buckets == census_oracle(2, 3, 40));
  CHECK(census_exhaustive(3, OddPrime(3), 14).buckets == census_oracle(3, 3, 14));
  CHECK(census_exhaustive(3, OddPrime(5), 14).buckets == census_oracle(3, 5, 14));
  CHECK(census_exhaustive(4, OddPrime(3), 8).buckets == census_oracle(4, 3, 8));
}

TEST_CASE("property: observed lambda values are sums of p-powers") {
  for (long p : {3, 5}) {
    const auto r = census_exhaustive(3, OddPrime(p), 400);
    for (const auto& [lam, c] : r.buckets) {
      if (lam.is_infinite()) continue;
      // base-p digit sum <= n - 1 is equivalent to being a sum of n - 1 terms from {0} u {p^i}
      std::uint64_t v = lam.value(), digits = 0;
      while (v) {
        digits += v % static_cast<std::uint64_t>(p);
        v /= static_cast<std::uint64_t>(p);
      }
      CHECK(digits <= 2);
    }
  }
}

TEST_CASE("lattice points and unranking") {
  CHECK(lattice_point_count(3, 2) == 6);
  CHECK(lattice_point_count(2, 12) == 13);
  CHECK(lattice_point_count(8, 1000000) == BigInt("198418254032143246033089089907145450001"));
  for (int n = 2; n <= 5; ++n) {
    const std::int64_t x = 7;
    std::uint64_t idx = 0;
    for_each_tuple(n, x, [&](const std::vector<std::int64_t>& k) {
      CHECK(unrank_tuple(n, x, BigInt(static_cast<unsigned long>(idx))).k() == k);
      ++idx;
    });
    CHECK(lattice_point_count(n, x) == BigInt(static_cast<unsigned long>(idx)));
  }
  CHECK(thrown_code([] { unrank_tuple(3, 2, 6); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("budget") {
  CensusOptions opts;
  opts.budget = 1000;
  CHECK(thrown_code([&] { census_exhaustive(3, OddPrime(3), 100, opts); }) == ErrorCode::BudgetExceeded);
  CHECK(census_exhaustive(3, OddPrime(3), 43, opts).total == 990);
}

TEST_CASE("property: worker partitioning does not change the report") {
  for (int n = 2; n <= 4; ++n) {
    CensusOptions one, many;
    many.workers = 7;
    const auto a = census_exhaustive(n, OddPrime(3), 60, one);
    const auto b = census_exhaustive(n, OddPrime(3), 60, many);
    CHECK(a == b);
    CHECK(to_json(a).dump() == to_json(b).dump());
  }
}

TEST_CASE("monte carlo determinism") {
  CensusOptions one, many;
  many.workers = 5;
  const auto a = census_montecarlo(3, OddPrime(3), 500, 20000, 9, one);
  const auto b = census_montecarlo(3, OddPrime(3), 500, 20000, 9, one);
  const auto c = census_montecarlo(3, OddPrime(3), 500, 20000, 9, many);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(to_json(a).dump() == to_json(c).dump());
  CHECK(to_json(a).dump() != to_json(census_montecarlo(3, OddPrime(3), 500, 20000, 10, one)).dump());
  CHECK(a.total == 20000);
  CHECK(a.seed == 9u);
}

TEST_CASE("monte carlo agrees with exhaustive frequencies (n = 2, x = 12)") {
  const auto ex = census_exhaustive(2, OddPrime(3), 12);
  const std::uint64_t samples = 130000;
  const auto mc = census_montecarlo(2, OddPrime(3), 12, samples, 0);
  for (const auto& [lam, count] : ex.buckets) {
    const double pr = static_cast<double>(count) / static_cast<double>(ex.total);
    const double sigma = std::sqrt(pr * (1 - pr) / static_cast<double>(samples));
    const auto it = mc.buckets.find(lam);
    const double emp = it == mc.buckets.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(samples);
    CHECK(std::abs(emp - pr) <= 3 * sigma);
  }
}

TEST_CASE("monte carlo at n = 8 recovers the lambda = 0 density") {
  const auto mc = census_montecarlo(8, OddPrime(5), 1000000, 1000000, 3);
  const double emp = static_cast<double>(mc.buckets.at(fin(0))) / 1e6;
  CHECK(std::abs(emp - 1.0 / 128) < 0.005);
}

TEST_CASE("slow verification covers every sampled tuple") {
  CensusOptions opts;
  opts.verify_slow_fraction = 1.0;
  const auto r = census_exhaustive(3, OddPrime(3), 10, opts);
  CHECK(r.slow_verified == r.total);
  const auto m = census_montecarlo(3, OddPrime(5), 10, 50, 4, opts);
  CHECK(m.slow_verified == 50u);
  opts.verify_slow_fraction = 0.1;
  const auto partial = census_exhaustive(3, OddPrime(3), 60, opts);
  CHECK(partial.slow_verified > 0u);
  CHECK(*partial.slow_verified < partial.total);
}

TEST_CASE("theory columns and comparison rows") {
  const auto r = census_exhaustive(3, OddPrime(3), 200);
  CHECK(r.theory_sum.at(0) == Rational(BigInt(1), BigInt(4)));
  CHECK(r.theory_sum.at(2) == Rational(BigInt(1), BigInt(9)));
  CHECK(r.theory_closed.at(2) == Rational(BigInt(1), BigInt(81)));
  const auto rows = compare_report(r);
  CHECK(rows.back().lambda == inf);
  CHECK_FALSE(rows.back().theory_sum.has_value());
  for (const auto& row : rows) {
    if (row.lambda == fin(0)) CHECK_FALSE(row.closer.has_value());
    if (row.lambda == fin(2)) CHECK(row.closer == CloserFormula::Sum);
    CHECK(row.empirical == Rational(BigInt(static_cast<unsigned long>(row.count)), BigInt(static_cast<unsigned long>(r.total))));
  }
  const auto empty = compare_report(census_exhaustive(3, OddPrime(3), 0));
  REQUIRE(empty.size() == 1);
  CHECK(empty[0].lambda == inf);
}

TEST_CASE("serialization") {
  const auto r = census_exhaustive(3, OddPrime(3), 30);
  const auto j = to_json(r);
  const auto back = census_from_json(nlohmann::ordered_json::parse(j.dump()));
  CHECK(back == r);
  CHECK(to_json(back).dump(2) == j.dump(2));
  const auto m = census_montecarlo(2, OddPrime(5), 100, 1000, 2);
  CHECK(to_json(census_from_json(to_json(m))).dump() == to_json(m).dump());

  const auto csv = to_csv(r);
  CHECK(csv.rfind("lambda,count,empirical,theory_sum,theory_closed,dev_sum,dev_closed\n", 0) == 0);
  CHECK(csv.find("\ninf,") != std::string::npos);
  const auto text = to_text(r);
  CHECK(text.find("formula discrepancies") != std::string::npos);
  CHECK(text.find("theory_closed=1/81") != std::string::npos);
  CHECK(thrown_code([] { census_from_json(nlohmann::ordered_json::parse(R"({"n":2})")); }) == ErrorCode::ParseError);
}
