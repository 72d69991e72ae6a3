#include "braidstat/verify.hpp"

#include <functional>
#include <sstream>

#include "braidstat/arithstat.hpp"
#include "braidstat/burau.hpp"
#include "braidstat/counter_rng.hpp"
#include "braidstat/error.hpp"
#include "braidstat/iwasawa.hpp"

namespace braidstat {

namespace {

constexpr std::size_t kMaxSamples = 10;
constexpr std::uint64_t kRandomTupleSeed = 0xB1A5;

void check(SuiteResult& r, bool ok, const std::function<std::string()>& describe) {
  ++r.checks;
  if (ok) return;
  ++r.failures;
  if (r.failure_samples.size() < kMaxSamples) r.failure_samples.push_back(describe());
}

std::string tuple_text(const std::vector<std::int64_t>& k) {
  std::string s;
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s;
}

// Calls fn on every tuple of the grid n in [2, 5], k_i in [1, 6], then on 500
// seeded random tuples with n in [2, 6], k_i in [1, 12].
void for_each_grid_tuple(const std::function<void(const FamilyTuple&)>& fn) {
  for (int n = 2; n <= 5; ++n) {
    std::vector<std::int64_t> k(static_cast<std::size_t>(n - 1), 1);
    while (true) {
      fn(FamilyTuple(k));
      std::size_t i = 0;
      while (i < k.size() && k[i] == 6) k[i++] = 1;
      if (i == k.size()) break;
      ++k[i];
    }
  }
  for (std::uint64_t s = 0; s < 500; ++s) {
    CounterRng rng(kRandomTupleSeed, s);
    const int n = 2 + static_cast<int>(rng.next() % 5);
    std::vector<std::int64_t> k(static_cast<std::size_t>(n - 1));
    for (auto& v : k) v = 1 + static_cast<std::int64_t>(rng.next() % 12);
    fn(FamilyTuple(k));
  }
}

void brute_compositions(std::int64_t rest, int parts, const std::vector<std::int64_t>& powers, std::uint64_t& count) {
  if (parts == 0) {
    if (rest == 0) ++count;
    return;
  }
  for (auto q : powers)
    if (q <= rest) brute_compositions(rest - q, parts - 1, powers, count);
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"burau-vs-product", "lemma-lambda", "braid-relations", "mu-zero",
                                                 "compositions"};
  return names;
}

SuiteResult run_suite(std::string_view name) {
  if (name == "burau-vs-product") return verify_burau_vs_product();
  if (name == "lemma-lambda") return verify_lemma_lambda();
  if (name == "braid-relations") return verify_braid_relations();
  if (name == "mu-zero") return verify_mu_zero();
  if (name == "compositions") return verify_compositions();
  std::string known;
  for (const auto& s : suite_names()) known += (known.empty() ? "" : ", ") + s;
  throw Error(ErrorCode::UnknownSuite, "unknown suite '" + std::string(name) + "' (known: " + known + ")");
}

SuiteResult verify_burau_vs_product() {
  SuiteResult r{"burau-vs-product", 0, 0, {}};
  for_each_grid_tuple([&](const FamilyTuple& t) {
    const auto burau = alexander_closed_braid(family_word(t));
    const auto product = alexander_family_product(t);
    check(r, burau == product, [&] {
      return "(" + tuple_text(t.k()) + "): burau " + to_string(burau) + " vs product " + to_string(product);
    });
  });
  return r;
}

SuiteResult verify_lemma_lambda(std::int64_t max_r) {
  SuiteResult r{"lemma-lambda", 0, 0, {}};
  const OddPrime primes[] = {OddPrime(3), OddPrime(5), OddPrime(7)};
  for (std::int64_t k = 1; k <= max_r; ++k) {
    const auto fhat = complete(alexander_closed_braid(BraidWord(2, std::vector<int>(static_cast<std::size_t>(k), 1))));
    for (const auto& p : primes) {
      const auto exact = invariants_exact(fhat, p);
      const auto fast = lambda_F_fast(k, p);
      check(r, exact.lambda == fast && exact.mu == ExtendedNat::finite(0), [&] {
        return "r=" + std::to_string(k) + " p=" + std::to_string(p.value()) + ": exact mu=" + to_string(exact.mu) +
               " lambda=" + to_string(exact.lambda) + ", lemma lambda=" + to_string(fast);
      });
    }
  }
  return r;
}

SuiteResult verify_braid_relations(int max_n) {
  SuiteResult r{"braid-relations", 0, 0, {}};
  for (int n = 2; n <= max_n; ++n) {
    for (auto kind : {BurauKind::Unreduced, BurauKind::Reduced}) {
      const char* kname = kind == BurauKind::Reduced ? "reduced" : "unreduced";
      const auto image = [&](std::vector<int> letters) { return burau_image(BraidWord(n, std::move(letters)), kind); };
      const auto id = burau_image(BraidWord(n, {}), kind);
      for (int i = 1; i < n; ++i) {
        check(r, image({i, -i}) == id && image({-i, i}) == id, [&] {
          return std::string(kname) + " n=" + std::to_string(n) + ": s" + std::to_string(i) + " inverse";
        });
        for (int j = i + 1; j < n; ++j) {
          const bool ok = j == i + 1 ? image({i, j, i}) == image({j, i, j}) : image({i, j}) == image({j, i});
          check(r, ok, [&] {
            return std::string(kname) + " n=" + std::to_string(n) + ": relation for s" + std::to_string(i) + ", s" +
                   std::to_string(j);
          });
        }
      }
    }
  }
  return r;
}

SuiteResult verify_mu_zero() {
  SuiteResult r{"mu-zero", 0, 0, {}};
  const OddPrime primes[] = {OddPrime(3), OddPrime(5), OddPrime(7)};
  for_each_grid_tuple([&](const FamilyTuple& t) {
    const auto delta = alexander_closed_braid(family_word(t));
    const auto fhat = complete(delta);
    for (const auto& p : primes) {
      const bool ok = !delta.is_zero() && invariants_exact(fhat, p).mu == ExtendedNat::finite(0);
      check(r, ok, [&] { return "(" + tuple_text(t.k()) + ") p=" + std::to_string(p.value()); });
    }
  });
  return r;
}

SuiteResult verify_compositions(std::int64_t max_lam, int max_j) {
  SuiteResult r{"compositions", 0, 0, {}};
  for (std::int64_t pv : {3, 5}) {
    const OddPrime p(pv);
    const auto powers = p_powers_upto(max_lam, p);
    for (int j = 1; j <= max_j; ++j) {
      for (std::int64_t lam = 1; lam <= max_lam; ++lam) {
        std::uint64_t brute = 0;
        brute_compositions(lam, j, powers, brute);
        const auto dp = compositions_p_power(j, lam, p).count;
        check(r, dp == BigInt(static_cast<unsigned long>(brute)), [&] {
          return "p=" + std::to_string(pv) + " j=" + std::to_string(j) + " lambda=" + std::to_string(lam) + ": dp " +
                 dp.get_str() + " vs brute " + std::to_string(brute);
        });
      }
    }
  }
  return r;
}

}  // namespace braidstat
