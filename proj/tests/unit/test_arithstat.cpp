#include <functional>

#include "braidstat/arithstat.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace braidstat;
using support::thrown_code;

namespace {

Rational Q(long a, long b) { return Rational(BigInt(a), BigInt(b)); }

BigInt pw(long b, unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  return r;
}

std::vector<std::int64_t> powers_of(long p, std::int64_t bound) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 1; q <= bound; q *= p) out.push_back(q);
  return out;
}

// All ordered j-tuples of p-powers summing to lam, by exhaustive recursion.
std::vector<Composition> brute_compositions(int j, std::int64_t lam, long p) {
  std::vector<Composition> out;
  Composition cur;
  const auto powers = powers_of(p, lam);
  std::function<void(int, std::int64_t)> rec = [&](int left, std::int64_t rest) {
    if (left == 0) {
      if (rest == 0) out.push_back(cur);
      return;
    }
    for (auto q : powers) {
      cur.push_back(q);
      rec(left - 1, rest - q);
      cur.pop_back();
    }
  };
  rec(j, lam);
  return out;
}

// Reads a p-power as its exponent.
int exponent_of(std::int64_t q, long p) {
  int e = 0;
  while (q > 1) {
    q /= p;
    ++e;
  }
  return e;
}

// sum over the set A of lambda-tuples (lambda_i in {0} u {p^i}) with the given
// total, of the product of the single-coordinate densities.
Rational density_sum_oracle(int n, std::int64_t lam, long p) {
  const auto support = [&] {
    auto s = powers_of(p, lam);
    s.insert(s.begin(), 0);
    return s;
  }();
  Rational total(0);
  std::vector<std::int64_t> cur;
  std::function<void(int, std::int64_t)> rec = [&](int left, std::int64_t rest) {
    if (left == 0) {
      if (rest != 0) return;
      Rational prod(1);
      for (auto v : cur) {
        if (v == 0) {
          prod *= Q(1, 2);
        } else {
          const int i = exponent_of(v, p);
          prod *= Rational(BigInt(p - 1), 2 * pw(p, static_cast<unsigned long>(i + 1)));
        }
      }
      total += prod;
      return;
    }
    for (auto v : support) {
      if (v > rest) break;
      cur.push_back(v);
      rec(left - 1, rest - v);
      cur.pop_back();
    }
  };
  rec(n - 1, lam);
  return total;
}

}  // namespace

TEST_CASE("compositions_p_power examples") {
  const OddPrime p5(5), p3(3);
  CHECK(compositions_p_power(3, 31, p5).count == 6);
  CHECK(compositions_p_power(7, 31, p5).count == 14);
  CHECK(compositions_p_power(1, 25, p5).count == 1);
  CHECK(compositions_p_power(1, 2, p3).count == 0);
  for (int j : {1, 2, 4, 5, 6}) CHECK(compositions_p_power(j, 31, p5).count == 0);
  CHECK(thrown_code([&] { compositions_p_power(0, 3, p3); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("compositions listing is the j = 3 display in lexicographic exponent order") {
  const auto r = compositions_p_power(3, 31, OddPrime(5), true);
  const std::vector<Composition> expected{{1, 5, 25}, {1, 25, 5}, {5, 1, 25}, {5, 25, 1}, {25, 1, 5}, {25, 5, 1}};
  CHECK(r.list == expected);
}

TEST_CASE("property: DP counts and lists match brute force") {
  for (long p : {3, 5}) {
    for (int j = 1; j <= 6; ++j) {
      for (std::int64_t lam = 1; lam <= 40; ++lam) {
        const auto brute = brute_compositions(j, lam, p);
        const auto dp = compositions_p_power(j, lam, OddPrime(p), j <= 4);
        CHECK(dp.count == BigInt(static_cast<unsigned long>(brute.size())));
        if (j <= 4) CHECK(dp.list == brute);
      }
    }
  }
}

TEST_CASE("a_set_count examples") {
  CHECK(a_set_count(8, 3, 31, OddPrime(5)) == 210);
  CHECK(a_set_count(8, 7, 31, OddPrime(5)) == 14);
  CHECK(a_set_count(3, 1, 2, OddPrime(3)) == 0);
  CHECK(thrown_code([] { a_set_count(3, 3, 2, OddPrime(3)); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("density_F examples") {
  const OddPrime p3(3);
  CHECK(density_F(0, p3) == Q(1, 2));
  CHECK(density_F(3, p3) == Q(1, 9));
  CHECK(density_F(2, p3) == Rational(0));
  CHECK(density_F(1, p3) == Q(1, 3));
  CHECK(density_F(9, p3) == Q(1, 27));
}

TEST_CASE("density_tuple examples") {
  const std::int64_t a[] = {1, 1}, b[] = {0, 0, 0}, c[] = {2, 1};
  CHECK(density_tuple(a, OddPrime(3)) == Q(1, 9));
  CHECK(density_tuple(b, OddPrime(5)) == Q(1, 8));
  CHECK(density_tuple(c, OddPrime(3)) == Rational(0));
}

TEST_CASE("density_n_sum examples") {
  const OddPrime p3(3);
  CHECK(density_n_sum(2, 0, p3) == Q(1, 2));
  CHECK(density_n_sum(3, 1, p3) == Q(1, 3));
  CHECK(density_n_sum(3, 2, p3) == Q(1, 9));
  CHECK(density_n_sum(3, 0, p3) == Q(1, 4));
}

TEST_CASE("property: density_n_sum matches enumeration of A") {
  for (long p : {3, 5, 7})
    for (int n = 2; n <= 5; ++n)
      for (std::int64_t lam = 0; lam <= 30; ++lam)
        CHECK(density_n_sum(n, lam, OddPrime(p)) == density_sum_oracle(n, lam, p));
}

TEST_CASE("property: n = 2 collapses to density_F") {
  for (long p : {3, 5, 7, 11})
    for (std::int64_t lam = 0; lam <= 200; ++lam)
      CHECK(density_n_sum(2, lam, OddPrime(p)) == density_F(lam, OddPrime(p)));
}

TEST_CASE("property: partial sums are monotone, bounded and converge") {
  for (long p : {3, 5}) {
    const OddPrime pp(p);
    // n = 2 closed form: the mass up to L misses exactly 1 / (2 p^I), p^I the
    // least p-power above L.
    for (std::int64_t L : {0, 1, 2, 10, 100, 10000}) {
      const auto table = density_n_sum_table(2, pp, L);
      Rational s(0);
      for (const auto& [lam, d] : table) s += d;
      std::int64_t q = 1;
      while (q <= L) q *= p;
      CHECK(s == Rational(1) - Rational(BigInt(1), BigInt(2 * q)));
    }
    for (int n = 2; n <= 4; ++n) {
      const std::int64_t L = 10000;
      const auto table = density_n_sum_table(n, pp, L);
      Rational s(0), prev(-1);
      for (const auto& [lam, d] : table) {
        s += d;
        CHECK(s > prev);
        prev = s;
      }
      CHECK(s <= Rational(1));
      // A total above L forces some coordinate above L / (n - 1), i.e. at least
      // the least p-power q beyond it, which has mass 1/(2q); union bound.
      std::int64_t q = 1;
      while (q <= L / (n - 1)) q *= p;
      CHECK(Rational(1) - s <= Rational(BigInt(n - 1), BigInt(2 * q)));
    }
  }
}

TEST_CASE("density_n_closed_paper examples") {
  const OddPrime p5(5), p3(3);
  const Rational four_fifths = Q(4, 5);
  const Rational expected = Rational(BigInt(1), pw(2, 7) * pw(5, 31)) *
                            (Rational(6 * 35) * Rational::pow(four_fifths, 3) +
                             Rational(14) * Rational::pow(four_fifths, 7));
  CHECK(density_n_closed_paper(8, 31, p5) == expected);
  CHECK(density_n_closed_paper(3, 2, p3) == Q(1, 81));
  CHECK(density_n_closed_paper(2, 1, p3) == Q(1, 9));
  CHECK(thrown_code([&] { density_n_closed_paper(2, 0, p3); }) == ErrorCode::InvalidArgument);
  CHECK(density_n_closed_column(2, 0, p3) == Q(1, 2));
  CHECK(density_n_closed_column(4, 0, p3) == Q(1, 8));
}

TEST_CASE("property: closed form equals its own definition") {
  for (long p : {3, 5})
    for (int n = 2; n <= 5; ++n)
      for (std::int64_t lam = 1; lam <= 30; ++lam) {
        Rational sum(0);
        for (int j = 1; j <= n - 1; ++j) {
          BigInt binom;
          mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n - 1), static_cast<unsigned long>(j));
          sum += Rational(binom * BigInt(static_cast<unsigned long>(brute_compositions(j, lam, p).size()))) *
                 Rational::pow(Q(p - 1, p), static_cast<unsigned long>(j));
        }
        const Rational expected =
            sum * Rational(BigInt(1), pw(2, static_cast<unsigned long>(n - 1)) * pw(p, static_cast<unsigned long>(lam)));
        CHECK(density_n_closed_paper(n, lam, OddPrime(p)) == expected);
      }
}

TEST_CASE("composition table matches direct counts") {
  const PowerCompositionTable table(6, 40, OddPrime(3));
  for (int j = 1; j <= 6; ++j)
    for (std::int64_t lam = 1; lam <= 40; ++lam)
      CHECK(table.count(j, lam) == compositions_p_power(j, lam, OddPrime(3)).count);
  CHECK(table.count(0, 0) == 1);
  CHECK(thrown_code([&] { table.count(7, 1); }) == ErrorCode::InvalidArgument);
}
