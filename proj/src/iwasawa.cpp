#include "braidstat/iwasawa.hpp"

#include <limits>
#include <optional>
#include <vector>

#include "braidstat/burau.hpp"
#include "braidstat/error.hpp"

namespace braidstat {

namespace {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

int valuation(const BigInt& c, std::int64_t p) {
  // c != 0
  BigInt tmp = c;
  return static_cast<int>(mpz_remove(tmp.get_mpz_t(), c.get_mpz_t(), BigInt(p).get_mpz_t()));
}

IwasawaInvariants zero_invariants(OddPrime p) {
  return {p, ExtendedNat::infinity(), ExtendedNat::infinity()};
}

// Coefficients (constant term first) of a polynomial with low() >= 0.
std::vector<BigInt> dense(const LaurentPoly& f) {
  std::vector<BigInt> out(static_cast<std::size_t>(f.high()) + 1);
  for (std::size_t i = 0; i < f.term_span(); ++i) out[static_cast<std::size_t>(f.low()) + i] = f.coeffs()[i];
  return out;
}

// Determines (mu, lambda) from residues mod p^B when mu < B is certified.
template <typename Residue, typename IsZero, typename Val>
std::optional<IwasawaInvariants> certify(const std::vector<Residue>& residues, OddPrime p, int budget_b,
                                         IsZero is_zero, Val val) {
  int best = budget_b;
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (is_zero(residues[i])) continue;
    const int v = val(residues[i]);
    if (v < best) {
      best = v;
      best_index = i;
    }
  }
  if (best >= budget_b) return std::nullopt;
  return IwasawaInvariants{p, ExtendedNat::finite(static_cast<std::uint64_t>(best)),
                           ExtendedNat::finite(best_index)};
}

// Taylor shift f(1 + T) with additions mod m. Only additions are needed, so a
// machine word suffices whenever 2m fits.
std::vector<std::uint64_t> shift_mod_u64(const std::vector<BigInt>& f, std::uint64_t m) {
  std::vector<std::uint64_t> acc(f.size(), 0);
  std::size_t len = 0;
  BigInt r;
  for (std::size_t j = f.size(); j-- > 0;) {
    for (std::size_t i = len; i > 0; --i) {
      std::uint64_t s = acc[i] + acc[i - 1];
      acc[i] = s >= m ? s - m : s;
    }
    if (len > 0) ++len;
    mpz_fdiv_r_ui(r.get_mpz_t(), f[j].get_mpz_t(), m);
    std::uint64_t s = acc[0] + r.get_ui();
    acc[0] = s >= m ? s - m : s;
    if (len == 0) len = 1;
  }
  return acc;
}

std::vector<BigInt> shift_mod_big(const std::vector<BigInt>& f, const BigInt& m) {
  std::vector<BigInt> acc(f.size());
  std::size_t len = 0;
  for (std::size_t j = f.size(); j-- > 0;) {
    for (std::size_t i = len; i > 0; --i) {
      acc[i] += acc[i - 1];
      if (acc[i] >= m) acc[i] -= m;
    }
    if (len > 0) ++len;
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), f[j].get_mpz_t(), m.get_mpz_t());
    acc[0] += r;
    if (acc[0] >= m) acc[0] -= m;
    if (len == 0) len = 1;
  }
  return acc;
}

std::optional<IwasawaInvariants> try_modulus(const std::vector<BigInt>& f, OddPrime p, int b, bool shift) {
  BigInt m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p.value()), static_cast<unsigned long>(b));
  const auto pv = static_cast<std::uint64_t>(p.value());
  if (m < (BigInt(1) << 62)) {
    const std::uint64_t mm = m.get_ui();
    std::vector<std::uint64_t> res;
    if (shift) {
      res = shift_mod_u64(f, mm);
    } else {
      res.reserve(f.size());
      BigInt r;
      for (const auto& c : f) {
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), mm);
        res.push_back(r.get_ui());
      }
    }
    return certify(
        res, p, b, [](std::uint64_t x) { return x == 0; },
        [pv](std::uint64_t x) {
          int v = 0;
          while (x % pv == 0) {
            x /= pv;
            ++v;
          }
          return v;
        });
  }
  std::vector<BigInt> res;
  if (shift) {
    res = shift_mod_big(f, m);
  } else {
    for (const auto& c : f) {
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
      res.push_back(r);
    }
  }
  return certify(
      res, p, b, [](const BigInt& x) { return x == 0; },
      [&p](const BigInt& x) { return valuation(x, p.value()); });
}

IwasawaInvariants modular_escalate(const std::vector<BigInt>& f, OddPrime p, int budget, bool shift) {
  if (budget < 1) throw Error(ErrorCode::InvalidArgument, "modular budget must be >= 1");
  for (int b = 1; b <= budget; ++b)
    if (auto inv = try_modulus(f, p, b, shift)) return *inv;
  throw Error(ErrorCode::BudgetExceeded,
              "all coefficients vanish mod p^" + std::to_string(budget) + "; retry with the exact path");
}

}  // namespace

OddPrime::OddPrime(std::int64_t p) : p_(p) {
  if (p < 3 || p % 2 == 0 || !is_prime(p))
    throw Error(ErrorCode::NotOddPrime, std::to_string(p) + " is not an odd prime");
}

std::uint64_t ExtendedNat::value() const {
  if (is_infinite()) throw Error(ErrorCode::InfiniteInvariants, "value is infinite");
  return value_;
}

std::string to_string(ExtendedNat v) { return v.is_infinite() ? "inf" : std::to_string(v.value()); }

nlohmann::ordered_json to_json(ExtendedNat v) {
  if (v.is_infinite()) return "inf";
  return v.value();
}

ExtendedNat extended_from_json(const nlohmann::ordered_json& j) {
  if (j.is_string() && j.get<std::string>() == "inf") return ExtendedNat::infinity();
  if (j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0))
    return ExtendedNat::finite(j.get<std::uint64_t>());
  throw Error(ErrorCode::ParseError, "expected a non-negative integer or \"inf\"");
}

nlohmann::ordered_json to_json(const IwasawaInvariants& inv) {
  nlohmann::ordered_json j;
  j["p"] = inv.p.value();
  j["mu"] = to_json(inv.mu);
  j["lambda"] = to_json(inv.lambda);
  return j;
}

LaurentPoly complete(const LaurentPoly& delta) { return substitute_one_plus_t(normalize_unit(delta)); }

IwasawaInvariants invariants_exact(const LaurentPoly& fhat, OddPrime p) {
  if (fhat.low() < 0) throw Error(ErrorCode::NotAPolynomial, "completed polynomial has negative powers of T");
  if (fhat.is_zero()) return zero_invariants(p);
  int mu = std::numeric_limits<int>::max();
  std::int64_t lambda = 0;
  for (std::size_t i = 0; i < fhat.term_span(); ++i) {
    const BigInt& c = fhat.coeffs()[i];
    if (c == 0) continue;
    const int v = valuation(c, p.value());
    if (v < mu) {
      mu = v;
      lambda = fhat.low() + static_cast<std::int64_t>(i);
      if (mu == 0) break;
    }
  }
  return {p, ExtendedNat::finite(static_cast<std::uint64_t>(mu)),
          ExtendedNat::finite(static_cast<std::uint64_t>(lambda))};
}

IwasawaInvariants invariants_modular(const BraidWord& b, OddPrime p, int budget) {
  const auto delta = alexander_closed_braid(b);
  if (delta.is_zero()) return zero_invariants(p);
  return modular_escalate(dense(delta), p, budget, true);
}

IwasawaInvariants invariants_modular(const FamilyTuple& t, OddPrime p, int budget) {
  const auto delta = alexander_family_product(t);
  if (delta.is_zero()) return zero_invariants(p);
  return modular_escalate(dense(delta), p, budget, true);
}

IwasawaInvariants invariants_modular_completed(const LaurentPoly& fhat, OddPrime p, int budget) {
  if (fhat.low() < 0) throw Error(ErrorCode::NotAPolynomial, "completed polynomial has negative powers of T");
  if (fhat.is_zero()) return zero_invariants(p);
  return modular_escalate(dense(fhat), p, budget, false);
}

int p_adic_valuation(std::int64_t r, std::int64_t p) {
  if (r == 0) throw Error(ErrorCode::InvalidArgument, "v_p(0) is infinite");
  int v = 0;
  while (r % p == 0) {
    r /= p;
    ++v;
  }
  return v;
}

ExtendedNat lambda_F_fast(std::int64_t r, OddPrime p) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "torus exponent must be >= 0");
  if (r == 0) return ExtendedNat::infinity();
  if (r % 2 != 0) return ExtendedNat::finite(0);
  std::uint64_t pk = 1;
  for (int v = p_adic_valuation(r, p.value()); v > 0; --v) pk *= static_cast<std::uint64_t>(p.value());
  return ExtendedNat::finite(pk);
}

ExtendedNat lambda_family_fast(const FamilyTuple& t, OddPrime p) {
  ExtendedNat acc = ExtendedNat::finite(0);
  for (auto k : t.k()) acc = acc + lambda_F_fast(k, p);
  return acc;
}

EvenCountCheck e_count_and_lambda_check(const FamilyTuple& t, OddPrime p) {
  EvenCountCheck out{0, true};
  for (auto k : t.k()) {
    if (k == 0) throw Error(ErrorCode::ZeroEntry, "the even-count bound needs every k_i >= 1");
    if (k % 2 == 0) {
      ++out.e;
      if (k % p.value() == 0) out.lambda_equals_e = false;
    }
  }
  return out;
}

BigInt growth_prediction(const IwasawaInvariants& inv, const BigInt& nu, std::int64_t r) {
  if (inv.mu.is_infinite() || inv.lambda.is_infinite())
    throw Error(ErrorCode::InfiniteInvariants, "growth formula needs finite mu and lambda");
  if (r < 1) throw Error(ErrorCode::InvalidArgument, "growth formula needs r >= 1");
  BigInt pr;
  mpz_ui_pow_ui(pr.get_mpz_t(), static_cast<unsigned long>(inv.p.value()), static_cast<unsigned long>(r));
  return BigInt(static_cast<unsigned long>(inv.mu.value())) * pr +
         BigInt(static_cast<unsigned long>(inv.lambda.value())) * BigInt(static_cast<long>(r)) + nu;
}

}  // namespace braidstat
