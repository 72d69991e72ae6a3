#include "braidstat/laurent.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "braidstat/error.hpp"

namespace braidstat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::GeneratorOutOfRange: return "GeneratorOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonExactDivision: return "NonExactDivision";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NegativeExponent: return "NegativeExponent";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotOddPrime: return "NotOddPrime";
    case ErrorCode::NotAPolynomial: return "NotAPolynomial";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::ZeroEntry: return "ZeroEntry";
    case ErrorCode::InfiniteInvariants: return "InfiniteInvariants";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::VerificationFailed: return "VerificationFailed";
  }
  return "Error";
}

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(std::int64_t low, std::vector<BigInt> coeffs)
    : low_(low), coeffs_(std::move(coeffs)) {
  trim();
}

LaurentPoly LaurentPoly::constant(const BigInt& c) { return LaurentPoly(0, {c}); }

LaurentPoly LaurentPoly::monomial(const BigInt& c, std::int64_t exponent) {
  return LaurentPoly(exponent, {c});
}

LaurentPoly LaurentPoly::from_ints(std::int64_t low, std::initializer_list<long> coeffs) {
  std::vector<BigInt> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return LaurentPoly(low, std::move(v));
}

std::int64_t LaurentPoly::high() const noexcept {
  return coeffs_.empty() ? low_ : low_ + static_cast<std::int64_t>(coeffs_.size()) - 1;
}

BigInt LaurentPoly::coeff(std::int64_t exponent) const {
  if (coeffs_.empty() || exponent < low_ || exponent > high()) return 0;
  return coeffs_[static_cast<std::size_t>(exponent - low_)];
}

void LaurentPoly::trim() {
  auto first = std::find_if(coeffs_.begin(), coeffs_.end(), [](const BigInt& c) { return c != 0; });
  if (first == coeffs_.end()) {
    coeffs_.clear();
    low_ = 0;
    return;
  }
  auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(), [](const BigInt& c) { return c != 0; });
  coeffs_.erase(last.base(), coeffs_.end());
  low_ += first - coeffs_.begin();
  coeffs_.erase(coeffs_.begin(), first);
}

LaurentPoly LaurentPoly::shifted(std::int64_t k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

namespace {

// In-place a += sign * b.
void accumulate(std::int64_t& a_low, std::vector<BigInt>& a, std::int64_t b_low,
                std::span<const BigInt> b, bool negate) {
  if (b.empty()) return;
  if (a.empty()) {
    a_low = b_low;
    a.assign(b.begin(), b.end());
    if (negate)
      for (auto& c : a) c = -c;
    return;
  }
  const std::int64_t lo = std::min(a_low, b_low);
  const std::int64_t hi = std::max(a_low + static_cast<std::int64_t>(a.size()),
                                   b_low + static_cast<std::int64_t>(b.size()));
  if (lo < a_low) a.insert(a.begin(), static_cast<std::size_t>(a_low - lo), BigInt(0));
  a.resize(static_cast<std::size_t>(hi - lo));
  a_low = lo;
  const auto offset = static_cast<std::size_t>(b_low - lo);
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (negate)
      a[offset + i] -= b[i];
    else
      a[offset + i] += b[i];
  }
}

}  // namespace

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& rhs) {
  accumulate(low_, coeffs_, rhs.low_, rhs.coeffs_, false);
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& rhs) {
  accumulate(low_, coeffs_, rhs.low_, rhs.coeffs_, true);
  trim();
  return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    const BigInt& ai = a.coeffs_[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      // out[i+j] += ai * b[j] without a temporary
      mpz_addmul(out[i + j].get_mpz_t(), ai.get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
  }
  return LaurentPoly(a.low_ + b.low_, std::move(out));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& rhs) {
  *this = *this * rhs;
  return *this;
}

bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
  return a.low_ == b.low_ && a.coeffs_ == b.coeffs_;
}

LaurentPoly arith(const LaurentPoly& a, const LaurentPoly& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
  }
  return {};
}

LaurentPoly exact_div(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by the zero polynomial");
  if (num.is_zero()) return {};
  const auto nlen = num.term_span();
  const auto dlen = den.term_span();
  if (nlen < dlen) throw Error(ErrorCode::NonExactDivision, "divisor has larger span than dividend");

  // Both operands are trimmed, so an exact quotient has lowest exponent
  // num.low - den.low and span nlen - dlen + 1. Long division from the top.
  std::vector<BigInt> rem(num.coeffs().begin(), num.coeffs().end());
  auto dc = den.coeffs();
  const BigInt& lead = dc[dlen - 1];
  std::vector<BigInt> q(nlen - dlen + 1);
  BigInt r;
  for (std::size_t k = q.size(); k-- > 0;) {
    BigInt& top = rem[k + dlen - 1];
    if (top == 0) continue;
    mpz_tdiv_qr(q[k].get_mpz_t(), r.get_mpz_t(), top.get_mpz_t(), lead.get_mpz_t());
    if (r != 0) throw Error(ErrorCode::NonExactDivision, "leading coefficient does not divide");
    for (std::size_t j = 0; j < dlen; ++j)
      mpz_submul(rem[k + j].get_mpz_t(), q[k].get_mpz_t(), dc[j].get_mpz_t());
  }
  for (const auto& c : rem)
    if (c != 0) throw Error(ErrorCode::NonExactDivision, "nonzero remainder");
  return LaurentPoly(num.low() - den.low(), std::move(q));
}

LaurentPoly normalize_unit(const LaurentPoly& f) {
  if (f.is_zero()) return f;
  LaurentPoly g = f.shifted(-f.low());
  if (g.coeffs().front() < 0) g = -g;
  return g;
}

LaurentPoly substitute_one_plus_t(const LaurentPoly& f) {
  if (f.low() < 0)
    throw Error(ErrorCode::NegativeExponent, "cannot substitute t = 1 + T into negative powers of t");
  if (f.is_zero()) return f;
  // Horner in t = 1 + T over the dense coefficients 0..high.
  const auto deg = static_cast<std::size_t>(f.high());
  std::vector<BigInt> acc(deg + 1);
  std::size_t len = 0;  // current length of acc
  for (std::size_t j = deg + 1; j-- > 0;) {
    // acc *= (1 + T)
    for (std::size_t i = len; i > 0; --i) acc[i] += acc[i - 1];
    if (len > 0) ++len;
    acc[0] += f.coeff(static_cast<std::int64_t>(j));
    if (len == 0) len = 1;
  }
  return LaurentPoly(0, std::move(acc));
}

std::string to_string(const LaurentPoly& f, char var) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < f.term_span(); ++i) {
    const BigInt& c = f.coeffs()[i];
    if (c == 0) continue;
    const std::int64_t e = f.low() + static_cast<std::int64_t>(i);
    const bool neg = c < 0;
    BigInt mag = abs(c);
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (e == 0) {
      os << mag.get_str();
      continue;
    }
    if (mag != 1) os << mag.get_str();
    os << var;
    if (e != 1) os << '^' << e;
  }
  return os.str();
}

nlohmann::ordered_json to_json(const LaurentPoly& f) {
  nlohmann::ordered_json j;
  j["low"] = f.low();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : f.coeffs()) arr.push_back(c.get_str());
  j["coeffs"] = std::move(arr);
  return j;
}

LaurentPoly laurent_from_json(const nlohmann::ordered_json& j) {
  try {
    std::vector<BigInt> coeffs;
    for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
    return LaurentPoly(j.at("low").get<std::int64_t>(), std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ParseError, "bad integer in polynomial JSON");
  }
}

// ---------------------------------------------------------------------------
// LaurentMatrix

LaurentMatrix::LaurentMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}

LaurentMatrix LaurentMatrix::identity(std::size_t dim) {
  LaurentMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = LaurentPoly::constant(1);
  return m;
}

LaurentMatrix operator*(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix product of unequal sizes");
  const std::size_t n = a.dim_;
  LaurentMatrix out(n);
  // Burau generators are sparse; skipping zero entries keeps long words cheap.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const LaurentPoly& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const LaurentPoly& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        out.at(i, j) += aik * bkj;
      }
    }
  return out;
}

LaurentMatrix operator-(const LaurentMatrix& a, const LaurentMatrix& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::DimensionMismatch, "matrix difference of unequal sizes");
  LaurentMatrix out = a;
  for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] -= b.entries_[i];
  return out;
}

namespace {

LaurentPoly cofactor_rec(const LaurentMatrix& m, std::vector<std::size_t>& cols, std::size_t row) {
  const std::size_t k = cols.size();
  if (k == 1) return m.at(row, cols[0]);
  if (k == 2)
    return m.at(row, cols[0]) * m.at(row + 1, cols[1]) - m.at(row, cols[1]) * m.at(row + 1, cols[0]);
  LaurentPoly acc;
  for (std::size_t c = 0; c < k; ++c) {
    const LaurentPoly& e = m.at(row, cols[c]);
    if (e.is_zero()) continue;
    std::vector<std::size_t> minor_cols;
    minor_cols.reserve(k - 1);
    for (std::size_t j = 0; j < k; ++j)
      if (j != c) minor_cols.push_back(cols[j]);
    LaurentPoly term = e * cofactor_rec(m, minor_cols, row + 1);
    if (c % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

}  // namespace

LaurentPoly determinant_cofactor(const LaurentMatrix& m) {
  if (m.dim() == 0) return LaurentPoly::constant(1);
  std::vector<std::size_t> cols(m.dim());
  for (std::size_t i = 0; i < cols.size(); ++i) cols[i] = i;
  return cofactor_rec(m, cols, 0);
}

LaurentPoly determinant_bareiss(const LaurentMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return LaurentPoly::constant(1);
  LaurentMatrix a = m;
  LaurentPoly prev = LaurentPoly::constant(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k).is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a.at(r, k).is_zero()) ++r;
      if (r == n) return {};
      for (std::size_t j = k; j < n; ++j) std::swap(a.at(k, j), a.at(r, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPoly v = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
        a.at(i, j) = exact_div(v, prev);
      }
      a.at(i, k) = LaurentPoly();
    }
    prev = a.at(k, k);
  }
  LaurentPoly d = a.at(n - 1, n - 1);
  return negate ? -d : d;
}

LaurentPoly determinant(const LaurentMatrix& m) {
  return m.dim() <= 4 ? determinant_cofactor(m) : determinant_bareiss(m);
}

LaurentMatrix inverse(const LaurentMatrix& m) {
  const std::size_t n = m.dim();
  // Augmented [A | I], eliminated fraction-free until the left block is d*I.
  std::vector<std::vector<LaurentPoly>> a(n, std::vector<LaurentPoly>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j);
    a[i][n + i] = LaurentPoly::constant(1);
  }
  LaurentPoly prev = LaurentPoly::constant(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) throw Error(ErrorCode::DivisionByZero, "matrix is singular");
      std::swap(a[k], a[r]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      const LaurentPoly factor = a[i][k];
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = exact_div(a[k][k] * a[i][j] - factor * a[k][j], prev);
      }
      a[i][k] = LaurentPoly();
    }
    prev = a[k][k];
  }
  LaurentMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = exact_div(a[i][n + j], a[i][i]);
  return out;
}

}  // namespace braidstat
