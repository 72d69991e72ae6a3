#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace braidstat {

using BigInt = mpz_class;

/// Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Stored as a lowest exponent plus a dense coefficient run. The run is always
/// trimmed so that its first and last entries are nonzero; the zero polynomial
/// has an empty run and low() == 0. The same type is reused for polynomials in
/// T = t - 1 after substitution.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t low, std::vector<BigInt> coeffs);

  static LaurentPoly constant(const BigInt& c);
  static LaurentPoly monomial(const BigInt& c, std::int64_t exponent);
  // Convenience for literals: coefficients of t^low, t^(low+1), ...
  static LaurentPoly from_ints(std::int64_t low, std::initializer_list<long> coeffs);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::int64_t low() const noexcept { return low_; }
  // Highest exponent; equals low() for the zero polynomial.
  std::int64_t high() const noexcept;
  std::size_t term_span() const noexcept { return coeffs_.size(); }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }
  BigInt coeff(std::int64_t exponent) const;

  // Multiplication by t^k.
  LaurentPoly shifted(std::int64_t k) const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& rhs);
  LaurentPoly& operator-=(const LaurentPoly& rhs);
  LaurentPoly& operator*=(const LaurentPoly& rhs);

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b);

 private:
  void trim();

  std::int64_t low_ = 0;
  std::vector<BigInt> coeffs_;
};

enum class ArithOp { Add, Sub, Mul };

LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op);

/// Exact quotient num / den. Throws NonExactDivision when den does not divide
/// num in Z[t, 1/t], DivisionByZero when den is zero.
LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den);

/// Canonical representative of the orbit {+-t^k f}: lowest exponent 0 and a
/// positive lowest coefficient.
LaurentPoly normalize_unit(const LaurentPoly& f);

/// f(1 + T) expanded as a polynomial in T. Requires f.low() >= 0.
LaurentPoly substitute_one_plus_t(const LaurentPoly& f);

/// "1 - 2t + 2t^2 - t^3"; "0" for the zero polynomial.
std::string to_string(const LaurentPoly& f, char var = 't');

/// {"low": int, "coeffs": ["1", "-2", ...]}
nlohmann::ordered_json to_json(const LaurentPoly& f);
LaurentPoly laurent_from_json(const nlohmann::ordered_json& j);

/// Square matrix over Z[t, 1/t], stored row-major.
class LaurentMatrix {
 public:
  explicit LaurentMatrix(std::size_t dim);

  static LaurentMatrix identity(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  LaurentPoly& at(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
  const LaurentPoly& at(std::size_t row, std::size_t col) const {
    return entries_[row * dim_ + col];
  }

  friend LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b);
  friend LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b);
  friend bool operator==(const LaurentMatrix& a, const LaurentMatrix& b) = default;

 private:
  std::size_t dim_;
  std::vector<LaurentPoly> entries_;
};

/// Exact determinant. Cofactor expansion up to dimension 4, fraction-free
/// (Bareiss) elimination above that.
LaurentPoly determinant(const LaurentMatrix& m);

// Exposed separately so both determinant routes can be tested on the same input.
LaurentPoly determinant_cofactor(const LaurentMatrix& m);
LaurentPoly determinant_bareiss(const LaurentMatrix& m);

/// Exact inverse via fraction-free Gauss-Jordan elimination. The determinant
/// must be a unit (+-t^k) or at least divide every adjugate entry; otherwise
/// NonExactDivision is thrown. A singular matrix raises DivisionByZero.
LaurentMatrix inverse(const LaurentMatrix& m);

}  // namespace braidstat
