#include "braidstat/rational.hpp"

#include <cstdio>
#include <string>

#include "braidstat/error.hpp"

namespace braidstat {

namespace {

BigInt pow10(unsigned long k) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.q_ == 0) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.q_ = -r.q_;
  return r;
}

Rational Rational::pow(const Rational& r, unsigned long e) {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), r.q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), r.q_.get_den_mpz_t(), e);
  return Rational(n, d);
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

std::string to_string(const Rational& r) {
  if (r.den() == 1) return r.num().get_str();
  return r.num().get_str() + "/" + r.den().get_str();
}

std::string to_decimal(const Rational& r, int digits) {
  if (digits < 1) digits = 1;
  if (r.is_zero()) return "0";
  const bool negative = r.num() < 0;
  const BigInt a = ::abs(r.num());
  const BigInt b = r.den();

  // e = floor(log10(a / b))
  long e = static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(b.get_mpz_t(), 10));
  auto at_least = [&](long g) {  // a / b >= 10^g
    return g >= 0 ? a >= b * pow10(static_cast<unsigned long>(g)) : a * pow10(static_cast<unsigned long>(-g)) >= b;
  };
  while (!at_least(e)) --e;
  while (at_least(e + 1)) ++e;

  // q = round(a / b * 10^(digits - 1 - e))
  const long shift = digits - 1 - e;
  BigInt num = a, den = b;
  if (shift >= 0)
    num *= pow10(static_cast<unsigned long>(shift));
  else
    den *= pow10(static_cast<unsigned long>(-shift));
  BigInt q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (2 * rem >= den) ++q;
  if (q == pow10(static_cast<unsigned long>(digits))) {
    q /= 10;
    ++e;
  }
  const std::string s = q.get_str();  // exactly `digits` characters

  auto strip = [](std::string str) {
    if (str.find('.') == std::string::npos) return str;
    while (!str.empty() && str.back() == '0') str.pop_back();
    if (!str.empty() && str.back() == '.') str.pop_back();
    return str;
  };

  std::string out;
  if (e >= -4 && e < digits) {
    if (e >= 0) {
      const auto int_len = static_cast<std::size_t>(e + 1);
      out = s.substr(0, int_len) + "." + s.substr(int_len);
    } else {
      out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    }
    out = strip(out);
  } else {
    out = strip(s.substr(0, 1) + "." + s.substr(1));
    char buf[32];
    std::snprintf(buf, sizeof buf, "e%c%02ld", e < 0 ? '-' : '+', e < 0 ? -e : e);
    out += buf;
  }
  return negative ? "-" + out : out;
}

nlohmann::ordered_json to_json(const Rational& r) {
  nlohmann::ordered_json j;
  j["num"] = r.num().get_str();
  j["den"] = r.den().get_str();
  j["decimal"] = to_decimal(r);
  return j;
}

Rational rational_from_json(const nlohmann::ordered_json& j) {
  try {
    return Rational(BigInt(j.at("num").get<std::string>()), BigInt(j.at("den").get<std::string>()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad rational JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad integer in rational JSON");
  }
}

}  // namespace braidstat
