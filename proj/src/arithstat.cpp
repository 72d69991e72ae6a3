#include "braidstat/arithstat.hpp"

#include <functional>
#include <optional>
#include <string>

#include "braidstat/error.hpp"

namespace braidstat {

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt big_pow(std::int64_t base, std::int64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
  return r;
}

void require_strands(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
}

}  // namespace

std::vector<std::int64_t> p_powers_upto(std::int64_t bound, OddPrime p) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 1; q <= bound; q *= p.value()) {
    out.push_back(q);
    if (q > bound / p.value()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------

PowerCompositionTable::PowerCompositionTable(int max_parts, std::int64_t max_sum, OddPrime p)
    : max_sum_(max_sum) {
  if (max_parts < 0 || max_sum < 0) throw Error(ErrorCode::InvalidArgument, "negative composition bounds");
  const auto powers = p_powers_upto(max_sum, p);
  layers_.resize(static_cast<std::size_t>(max_parts) + 1);
  layers_[0][0] = 1;
  for (std::size_t j = 1; j < layers_.size(); ++j) {
    auto& next = layers_[j];
    for (const auto& [m, c] : layers_[j - 1])
      for (auto q : powers) {
        if (m + q > max_sum) break;
        next[m + q] += c;
      }
  }
}

BigInt PowerCompositionTable::count(int parts, std::int64_t sum) const {
  if (parts < 0 || static_cast<std::size_t>(parts) >= layers_.size() || sum < 0 || sum > max_sum_)
    throw Error(ErrorCode::InvalidArgument, "query outside the composition table");
  const auto& layer = layers_[static_cast<std::size_t>(parts)];
  auto it = layer.find(sum);
  return it == layer.end() ? BigInt(0) : it->second;
}

CompositionResult compositions_p_power(int j, std::int64_t lam, OddPrime p, bool list) {
  if (j < 1 || lam < 1) throw Error(ErrorCode::InvalidArgument, "compositions need j >= 1 and lambda >= 1");
  PowerCompositionTable table(j, lam, p);
  CompositionResult out{table.count(j, lam), {}};
  if (!list) return out;

  const auto powers = p_powers_upto(lam, p);
  Composition cur;
  std::function<void(int, std::int64_t)> walk = [&](int left, std::int64_t rem) {
    if (left == 0) {
      out.list.push_back(cur);
      return;
    }
    for (auto q : powers) {
      if (q > rem) break;
      if (table.count(left - 1, rem - q) == 0) continue;
      cur.push_back(q);
      walk(left - 1, rem - q);
      cur.pop_back();
    }
  };
  walk(j, lam);
  return out;
}

BigInt a_set_count(int n, int j, std::int64_t lam, OddPrime p) {
  require_strands(n);
  if (j < 1 || j > n - 1) throw Error(ErrorCode::InvalidArgument, "need 1 <= j <= n - 1");
  if (lam < 1) return 0;
  return binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(j)) *
         compositions_p_power(j, lam, p).count;
}

// ---------------------------------------------------------------------------

Rational density_F(std::int64_t lam, OddPrime p) {
  if (lam < 0) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  if (lam == 0) return Rational(1, 2);
  std::int64_t v = lam;
  int i = 0;
  while (v % p.value() == 0) {
    v /= p.value();
    ++i;
  }
  if (v != 1) return Rational(0);
  // (1 / (2 p^i)) (1 - 1/p) = (p - 1) / (2 p^{i+1})
  return Rational(BigInt(static_cast<long>(p.value() - 1)), 2 * big_pow(p.value(), i + 1));
}

Rational density_tuple(std::span<const std::int64_t> lams, OddPrime p) {
  Rational acc(1);
  for (auto l : lams) {
    acc *= density_F(l, p);
    if (acc.is_zero()) break;
  }
  return acc;
}

std::map<std::int64_t, Rational> density_n_sum_table(int n, OddPrime p, std::int64_t max_lam) {
  require_strands(n);
  if (max_lam < 0) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  // Support of density_F: 0 and the p-powers.
  std::vector<std::pair<std::int64_t, Rational>> support{{0, density_F(0, p)}};
  for (auto q : p_powers_upto(max_lam, p)) support.emplace_back(q, density_F(q, p));

  std::map<std::int64_t, Rational> layer{{0, Rational(1)}};
  for (int coord = 0; coord < n - 1; ++coord) {
    std::map<std::int64_t, Rational> next;
    for (const auto& [s, d] : layer)
      for (const auto& [v, dv] : support) {
        if (s + v > max_lam) break;
        next[s + v] += d * dv;
      }
    layer = std::move(next);
  }
  return layer;
}

Rational density_n_sum(int n, std::int64_t lam, OddPrime p) {
  const auto table = density_n_sum_table(n, p, lam);
  auto it = table.find(lam);
  return it == table.end() ? Rational(0) : it->second;
}

Rational density_n_closed_column(int n, std::int64_t lam, OddPrime p, const PowerCompositionTable* table) {
  require_strands(n);
  if (lam < 0) throw Error(ErrorCode::InvalidArgument, "lambda must be >= 0");
  if (lam == 0) return Rational(BigInt(1), big_pow(2, n - 1));

  std::optional<PowerCompositionTable> local;
  if (table == nullptr) {
    local.emplace(n - 1, lam, p);
    table = &*local;
  }
  const Rational one_minus = Rational(BigInt(static_cast<long>(p.value() - 1)), BigInt(static_cast<long>(p.value())));
  Rational sum(0);
  for (int j = 1; j <= n - 1; ++j) {
    const BigInt c = table->count(j, lam);
    if (c == 0) continue;
    sum += Rational(binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(j)) * c) *
           Rational::pow(one_minus, static_cast<unsigned long>(j));
  }
  return sum * Rational(BigInt(1), big_pow(2, n - 1) * big_pow(p.value(), lam));
}

Rational density_n_closed_paper(int n, std::int64_t lam, OddPrime p) {
  if (lam < 1) throw Error(ErrorCode::InvalidArgument, "the closed formula is stated for lambda >= 1");
  return density_n_closed_column(n, lam, p);
}

}  // namespace braidstat
