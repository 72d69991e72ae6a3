#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "braidstat/braid.hpp"
#include "braidstat/laurent.hpp"

#include "json.hpp"

namespace braidstat {

/// An odd prime p >= 3. Construction validates primality (NotOddPrime).
class OddPrime {
 public:
  explicit OddPrime(std::int64_t p);
  std::int64_t value() const noexcept { return p_; }
  friend auto operator<=>(const OddPrime&, const OddPrime&) = default;

 private:
  std::int64_t p_;
};

/// Non-negative integer or infinity. Infinity is a separate state, never an
/// in-band sentinel value.
class ExtendedNat {
 public:
  enum class Kind { Finite, Infinite };

  constexpr ExtendedNat() = default;
  static constexpr ExtendedNat finite(std::uint64_t v) { return ExtendedNat(Kind::Finite, v); }
  static constexpr ExtendedNat infinity() { return ExtendedNat(Kind::Infinite, 0); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_infinite() const noexcept { return kind_ == Kind::Infinite; }
  // Throws InfiniteInvariants on infinity.
  std::uint64_t value() const;

  // inf absorbs.
  friend constexpr ExtendedNat operator+(ExtendedNat a, ExtendedNat b) {
    if (a.is_infinite() || b.is_infinite()) return infinity();
    return finite(a.value_ + b.value_);
  }
  friend constexpr bool operator==(ExtendedNat, ExtendedNat) = default;
  // Finite values ordered numerically, infinity above all of them.
  friend constexpr std::strong_ordering operator<=>(ExtendedNat a, ExtendedNat b) {
    if (a.kind_ != b.kind_) return a.is_infinite() ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  constexpr ExtendedNat(Kind k, std::uint64_t v) : kind_(k), value_(v) {}
  Kind kind_ = Kind::Finite;
  std::uint64_t value_ = 0;
};

std::string to_string(ExtendedNat v);  // decimal or "inf"
nlohmann::ordered_json to_json(ExtendedNat v);
ExtendedNat extended_from_json(const nlohmann::ordered_json& j);

/// Iwasawa mu and lambda at p. Both are infinite exactly when the Alexander
/// polynomial vanishes.
struct IwasawaInvariants {
  OddPrime p;
  ExtendedNat mu;
  ExtendedNat lambda;

  friend bool operator==(const IwasawaInvariants&, const IwasawaInvariants&) = default;
};

nlohmann::ordered_json to_json(const IwasawaInvariants& inv);

/// Completed Alexander polynomial: normalize_unit, then t -> 1 + T.
LaurentPoly complete(const LaurentPoly& delta);

/// mu = least p-adic valuation among the coefficients; lambda = least index
/// (power of T) attaining it. Zero maps to (inf, inf). Requires low() >= 0.
IwasawaInvariants invariants_exact(const LaurentPoly& fhat, OddPrime p);

inline constexpr int kDefaultModularBudget = 64;

/// Same result as invariants_exact, computed from the coefficients of the
/// completed polynomial reduced mod p^B for B = 1, 2, ..., budget. Throws
/// BudgetExceeded if mu >= budget cannot be excluded.
IwasawaInvariants invariants_modular(const BraidWord& b, OddPrime p, int budget = kDefaultModularBudget);
IwasawaInvariants invariants_modular(const FamilyTuple& t, OddPrime p, int budget = kDefaultModularBudget);
// Input already in T (no substitution applied).
IwasawaInvariants invariants_modular_completed(const LaurentPoly& fhat, OddPrime p,
                                               int budget = kDefaultModularBudget);

/// v_p(r) for r != 0.
int p_adic_valuation(std::int64_t r, std::int64_t p);

/// lambda of the 2-strand torus link closure of sigma_1^r: 0 for odd r,
/// p^{v_p(r)} for even r > 0, infinity for r = 0.
ExtendedNat lambda_F_fast(std::int64_t r, OddPrime p);

/// Sum of lambda_F_fast over the tuple (infinite if any entry is 0).
ExtendedNat lambda_family_fast(const FamilyTuple& t, OddPrime p);

struct EvenCountCheck {
  int e;                 // number of even entries
  bool lambda_equals_e;  // p divides no even entry
};

/// Lower bound lambda >= e and the sufficient condition for equality.
/// Throws ZeroEntry if some k_i = 0.
EvenCountCheck e_count_and_lambda_check(const FamilyTuple& t, OddPrime p);

/// mu p^r + lambda r + nu. Throws InfiniteInvariants for Delta = 0.
BigInt growth_prediction(const IwasawaInvariants& inv, const BigInt& nu, std::int64_t r);

}  // namespace braidstat
