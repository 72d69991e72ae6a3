#include "braidstat/census.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>
#include <utility>

#include "braidstat/arithstat.hpp"
#include "braidstat/burau.hpp"
#include "braidstat/counter_rng.hpp"
#include "braidstat/error.hpp"

namespace braidstat {

BigInt CounterRng::uniform_below(const BigInt& bound) {
  if (bound <= 0) throw Error(ErrorCode::InvalidArgument, "uniform_below needs a positive bound");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  BigInt r, w;
  while (true) {
    r = 0;
    for (std::size_t i = 0; i < words; ++i) {
      const std::uint64_t v = next();
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), 64);
      mpz_set_ui(w.get_mpz_t(), static_cast<unsigned long>(v));
      r += w;
    }
    mpz_fdiv_r_2exp(r.get_mpz_t(), r.get_mpz_t(), bits);
    if (r < bound) return r;
  }
}

namespace {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void validate(int n, std::int64_t x) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "n must be >= 2");
  if (x < 0) throw Error(ErrorCode::InvalidArgument, "x must be >= 0");
}

unsigned worker_count(const CensusOptions& o) { return std::max(1u, o.workers); }

// lambda(F_r) for r in [0, x]; -1 stands for infinity (r = 0).
std::vector<std::int64_t> lambda_f_table(std::int64_t x, OddPrime p) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(x) + 1);
  for (std::int64_t r = 0; r <= x; ++r) {
    const auto v = lambda_F_fast(r, p);
    t[static_cast<std::size_t>(r)] = v.is_infinite() ? -1 : static_cast<std::int64_t>(v.value());
  }
  return t;
}

bool selected_for_slow_check(const std::vector<std::int64_t>& k, const CensusOptions& o) {
  if (o.verify_slow_fraction <= 0.0) return false;
  std::uint64_t h = CounterRng::mix(o.verify_seed ^ 0x5EEDC0DEULL);
  for (auto v : k) h = CounterRng::mix(h ^ static_cast<std::uint64_t>(v));
  return static_cast<double>(h >> 11) * 0x1.0p-53 < o.verify_slow_fraction;
}

void slow_check(const std::vector<std::int64_t>& k, OddPrime p, ExtendedNat fast) {
  const FamilyTuple t(k);
  const auto inv = invariants_exact(complete(alexander_closed_braid(family_word(t))), p);
  const bool ok = inv.lambda == fast && (fast.is_infinite() || inv.mu == ExtendedNat::finite(0));
  if (!ok) {
    std::ostringstream os;
    os << "fast and exact lambda disagree on (";
    for (std::size_t i = 0; i < k.size(); ++i) os << (i ? "," : "") << k[i];
    os << "): fast " << to_string(fast) << ", exact mu " << to_string(inv.mu) << " lambda "
       << to_string(inv.lambda);
    throw Error(ErrorCode::VerificationFailed, os.str());
  }
}

struct Histogram {
  std::vector<std::uint64_t> finite;
  std::uint64_t infinite = 0;
  std::uint64_t slow_checked = 0;
};

class ExhaustiveWalker {
 public:
  ExhaustiveWalker(int coords, const std::vector<std::int64_t>& lf, OddPrime p, const CensusOptions& o,
                   Histogram& h)
      : coords_(coords), lf_(lf), p_(p), opts_(o), h_(h), cur_(static_cast<std::size_t>(coords)) {}

  void run_first(std::int64_t k1, std::int64_t x) {
    cur_[0] = k1;
    const std::int64_t l = lf_[static_cast<std::size_t>(k1)];
    if (coords_ == 1) {
      record(l);
      return;
    }
    walk(1, x - k1, l < 0 ? 0 : l, l < 0);
  }

 private:
  void record(std::int64_t lam) {
    const ExtendedNat value = lam < 0 ? ExtendedNat::infinity() : ExtendedNat::finite(static_cast<std::uint64_t>(lam));
    if (lam < 0)
      ++h_.infinite;
    else
      ++h_.finite[static_cast<std::size_t>(lam)];
    if (selected_for_slow_check(cur_, opts_)) {
      slow_check(cur_, p_, value);
      ++h_.slow_checked;
    }
  }

  void walk(int c, std::int64_t rem, std::int64_t acc, bool inf) {
    const bool last = c == coords_ - 1;
    for (std::int64_t k = 0; k <= rem; ++k) {
      cur_[static_cast<std::size_t>(c)] = k;
      const std::int64_t l = lf_[static_cast<std::size_t>(k)];
      const bool now_inf = inf || l < 0;
      if (last)
        record(now_inf ? -1 : acc + l);
      else
        walk(c + 1, rem - k, now_inf ? 0 : acc + l, now_inf);
    }
  }

  int coords_;
  const std::vector<std::int64_t>& lf_;
  OddPrime p_;
  const CensusOptions& opts_;
  Histogram& h_;
  std::vector<std::int64_t> cur_;
};

template <typename Fn>
void run_workers(unsigned workers, Fn fn) {
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

BigInt lattice_point_count(int n, std::int64_t x) {
  validate(n, x);
  return binomial(static_cast<unsigned long>(x + n - 1), static_cast<unsigned long>(n - 1));
}

FamilyTuple unrank_tuple(int n, std::int64_t x, const BigInt& idx_in) {
  validate(n, x);
  const int coords = n - 1;
  if (idx_in < 0 || idx_in >= lattice_point_count(n, x))
    throw Error(ErrorCode::InvalidArgument, "tuple index out of range");
  BigInt idx = idx_in;
  std::int64_t s = x;
  std::vector<std::int64_t> k(static_cast<std::size_t>(coords));
  for (int c = 0; c + 1 < coords; ++c) {
    const auto r = static_cast<unsigned long>(coords - c);
    const BigInt total = binomial(static_cast<unsigned long>(s) + r, r);
    const BigInt need = total - idx;
    // least w in [0, s] with C(w + r, r) >= need
    std::int64_t lo = 0, hi = s;
    while (lo < hi) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (binomial(static_cast<unsigned long>(mid) + r, r) >= need)
        hi = mid;
      else
        lo = mid + 1;
    }
    k[static_cast<std::size_t>(c)] = s - lo;
    idx = binomial(static_cast<unsigned long>(lo) + r, r) - need;
    s = lo;
  }
  k[static_cast<std::size_t>(coords - 1)] = idx.get_si();
  return FamilyTuple(std::move(k));
}

CensusReport census_exhaustive(int n, OddPrime p, std::int64_t x, const CensusOptions& options) {
  validate(n, x);
  const BigInt total = lattice_point_count(n, x);
  if (total > BigInt(static_cast<unsigned long>(options.budget)))
    throw Error(ErrorCode::BudgetExceeded, "exhaustive census needs " + total.get_str() +
                                               " tuples, above the budget of " + std::to_string(options.budget) +
                                               "; use Monte-Carlo sampling or raise the budget");

  const auto lf = lambda_f_table(x, p);
  const std::int64_t max_lf = *std::max_element(lf.begin(), lf.end());
  const auto hist_size = static_cast<std::size_t>(std::max<std::int64_t>(max_lf, 0) * (n - 1) + 1);

  const unsigned workers = worker_count(options);
  std::vector<Histogram> hists(workers);
  run_workers(workers, [&](unsigned w) {
    Histogram& h = hists[w];
    h.finite.assign(hist_size, 0);
    ExhaustiveWalker walker(n - 1, lf, p, options, h);
    for (std::int64_t k1 = w; k1 <= x; k1 += workers) walker.run_first(k1, x);
  });

  CensusReport report;
  report.n = n;
  report.p = p.value();
  report.x = x;
  report.mode = CensusMode::Exhaustive;
  report.total = total.get_ui();
  std::uint64_t inf = 0, slow = 0;
  std::vector<std::uint64_t> merged(hist_size, 0);
  for (const auto& h : hists) {
    inf += h.infinite;
    slow += h.slow_checked;
    for (std::size_t i = 0; i < hist_size; ++i) merged[i] += h.finite[i];
  }
  for (std::size_t i = 0; i < hist_size; ++i)
    if (merged[i] != 0) report.buckets[ExtendedNat::finite(i)] = merged[i];
  if (inf != 0) report.buckets[ExtendedNat::infinity()] = inf;
  if (options.verify_slow_fraction > 0.0) report.slow_verified = slow;
  attach_theory(report);
  return report;
}

CensusReport census_montecarlo(int n, OddPrime p, std::int64_t x, std::uint64_t samples, std::uint64_t seed,
                               const CensusOptions& options) {
  validate(n, x);
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const BigInt population = lattice_point_count(n, x);
  const unsigned workers = worker_count(options);

  struct Local {
    std::map<ExtendedNat, std::uint64_t> buckets;
    std::uint64_t slow_checked = 0;
  };
  std::vector<Local> locals(workers);
  run_workers(workers, [&](unsigned w) {
    Local& local = locals[w];
    const std::uint64_t begin = samples * w / workers;
    const std::uint64_t end = samples * (w + 1) / workers;
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterRng rng(seed, i);
      const FamilyTuple t = unrank_tuple(n, x, rng.uniform_below(population));
      const ExtendedNat lam = lambda_family_fast(t, p);
      ++local.buckets[lam];
      if (options.verify_slow_fraction > 0.0 && rng.uniform01() < options.verify_slow_fraction) {
        slow_check(t.k(), p, lam);
        ++local.slow_checked;
      }
    }
  });

  CensusReport report;
  report.n = n;
  report.p = p.value();
  report.x = x;
  report.mode = CensusMode::MonteCarlo;
  report.total = samples;
  report.seed = seed;
  report.samples = samples;
  std::uint64_t slow = 0;
  for (const auto& local : locals) {
    slow += local.slow_checked;
    for (const auto& [lam, c] : local.buckets) report.buckets[lam] += c;
  }
  if (options.verify_slow_fraction > 0.0) report.slow_verified = slow;
  attach_theory(report);
  return report;
}

void attach_theory(CensusReport& report) {
  report.theory_sum.clear();
  report.theory_closed.clear();
  std::int64_t max_lam = -1;
  for (const auto& [lam, c] : report.buckets)
    if (!lam.is_infinite()) max_lam = std::max<std::int64_t>(max_lam, static_cast<std::int64_t>(lam.value()));
  if (max_lam < 0) return;
  const OddPrime p(report.p);
  const auto sums = density_n_sum_table(report.n, p, max_lam);
  const PowerCompositionTable comps(report.n - 1, max_lam, p);
  for (const auto& [lam, c] : report.buckets) {
    if (lam.is_infinite()) continue;
    const auto l = static_cast<std::int64_t>(lam.value());
    auto it = sums.find(l);
    report.theory_sum[lam.value()] = it == sums.end() ? Rational(0) : it->second;
    report.theory_closed[lam.value()] = density_n_closed_column(report.n, l, p, &comps);
  }
}

std::vector<CompareRow> compare_report(const CensusReport& report) {
  std::vector<CompareRow> rows;
  for (const auto& [lam, count] : report.buckets) {
    CompareRow row;
    row.lambda = lam;
    row.count = count;
    row.empirical = Rational(BigInt(static_cast<unsigned long>(count)), BigInt(static_cast<unsigned long>(report.total)));
    if (!lam.is_infinite()) {
      auto s = report.theory_sum.find(lam.value());
      auto c = report.theory_closed.find(lam.value());
      if (s != report.theory_sum.end()) {
        row.theory_sum = s->second;
        row.dev_sum = abs(row.empirical - s->second);
      }
      if (c != report.theory_closed.end()) {
        row.theory_closed = c->second;
        row.dev_closed = abs(row.empirical - c->second);
      }
      if (row.dev_sum && row.dev_closed && *row.theory_sum != *row.theory_closed) {
        row.closer = *row.dev_sum < *row.dev_closed   ? CloserFormula::Sum
                     : *row.dev_closed < *row.dev_sum ? CloserFormula::Closed
                                                      : CloserFormula::Tie;
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view to_string(CloserFormula c) {
  switch (c) {
    case CloserFormula::Sum: return "sum";
    case CloserFormula::Closed: return "closed";
    case CloserFormula::Tie: return "tie";
  }
  return "tie";
}

// ---------------------------------------------------------------------------
// Serialization

nlohmann::ordered_json to_json(const CensusReport& report) {
  using json = nlohmann::ordered_json;
  json j;
  j["n"] = report.n;
  j["p"] = report.p;
  j["x"] = report.x;
  j["mode"] = report.mode == CensusMode::Exhaustive ? "exhaustive" : "montecarlo";
  if (report.seed) j["seed"] = *report.seed;
  if (report.samples) j["samples"] = *report.samples;
  j["total"] = report.total;
  if (report.slow_verified) j["slow_verified"] = *report.slow_verified;

  auto buckets = json::array();
  for (const auto& [lam, count] : report.buckets) buckets.push_back(json{{"lambda", to_json(lam)}, {"count", count}});
  j["buckets"] = std::move(buckets);

  auto rows = json::array();
  auto discrepancies = json::array();
  for (const auto& row : compare_report(report)) {
    json r;
    r["lambda"] = to_json(row.lambda);
    r["count"] = row.count;
    r["empirical"] = to_json(row.empirical);
    r["theory_sum"] = row.theory_sum ? to_json(*row.theory_sum) : json(nullptr);
    r["theory_closed"] = row.theory_closed ? to_json(*row.theory_closed) : json(nullptr);
    r["dev_sum"] = row.dev_sum ? to_json(*row.dev_sum) : json(nullptr);
    r["dev_closed"] = row.dev_closed ? to_json(*row.dev_closed) : json(nullptr);
    if (row.closer) {
      r["closer"] = to_string(*row.closer);
      discrepancies.push_back(json{{"lambda", to_json(row.lambda)}, {"closer", to_string(*row.closer)}});
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  j["formula_discrepancies"] = std::move(discrepancies);
  return j;
}

CensusReport census_from_json(const nlohmann::ordered_json& j) {
  try {
    CensusReport r;
    r.n = j.at("n").get<int>();
    r.p = j.at("p").get<std::int64_t>();
    r.x = j.at("x").get<std::int64_t>();
    const auto mode = j.at("mode").get<std::string>();
    if (mode == "exhaustive")
      r.mode = CensusMode::Exhaustive;
    else if (mode == "montecarlo")
      r.mode = CensusMode::MonteCarlo;
    else
      throw Error(ErrorCode::ParseError, "unknown census mode '" + mode + "'");
    if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("samples")) r.samples = j["samples"].get<std::uint64_t>();
    r.total = j.at("total").get<std::uint64_t>();
    if (j.contains("slow_verified")) r.slow_verified = j["slow_verified"].get<std::uint64_t>();
    for (const auto& b : j.at("buckets")) r.buckets[extended_from_json(b.at("lambda"))] = b.at("count").get<std::uint64_t>();
    for (const auto& row : j.at("rows")) {
      const auto lam = extended_from_json(row.at("lambda"));
      if (lam.is_infinite()) continue;
      if (!row.at("theory_sum").is_null()) r.theory_sum[lam.value()] = rational_from_json(row["theory_sum"]);
      if (!row.at("theory_closed").is_null()) r.theory_closed[lam.value()] = rational_from_json(row["theory_closed"]);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad census JSON: ") + e.what());
  }
}

std::string to_csv(const CensusReport& report) {
  std::ostringstream os;
  os << "lambda,count,empirical,theory_sum,theory_closed,dev_sum,dev_closed\n";
  auto cell = [](const std::optional<Rational>& v) { return v ? to_decimal(*v) : std::string(); };
  for (const auto& row : compare_report(report)) {
    os << to_string(row.lambda) << ',' << row.count << ',' << to_decimal(row.empirical) << ','
       << cell(row.theory_sum) << ',' << cell(row.theory_closed) << ',' << cell(row.dev_sum) << ','
       << cell(row.dev_closed) << '\n';
  }
  return os.str();
}

std::string to_text(const CensusReport& report) {
  std::ostringstream os;
  os << "census " << (report.mode == CensusMode::Exhaustive ? "exhaustive" : "montecarlo") << ": n=" << report.n
     << " p=" << report.p << " x=" << report.x;
  if (report.samples) os << " samples=" << *report.samples << " seed=" << report.seed.value_or(0);
  os << " total=" << report.total << '\n';
  if (report.slow_verified) os << "slow-path verified tuples: " << *report.slow_verified << '\n';

  const auto rows = compare_report(report);
  auto cell = [](const std::optional<Rational>& v) { return v ? to_decimal(*v) : std::string("-"); };
  auto col = [&os](const std::string& s, std::size_t w) {
    os << s << std::string(s.size() < w ? w - s.size() : 1, ' ');
  };
  col("lambda", 8);
  col("count", 10);
  for (const char* h : {"empirical", "theory_sum", "theory_closed", "dev_sum", "dev_closed"}) col(h, 18);
  os << "closer\n";
  for (const auto& row : rows) {
    col(to_string(row.lambda), 8);
    col(std::to_string(row.count), 10);
    col(to_decimal(row.empirical), 18);
    for (const auto* v : {&row.theory_sum, &row.theory_closed, &row.dev_sum, &row.dev_closed}) col(cell(*v), 18);
    os << (row.closer ? std::string(to_string(*row.closer)) : std::string()) << '\n';
  }

  os << "exact values:\n";
  for (const auto& row : rows) {
    os << "  lambda=" << to_string(row.lambda) << " empirical=" << to_string(row.empirical);
    if (row.theory_sum) os << " theory_sum=" << to_string(*row.theory_sum);
    if (row.theory_closed) os << " theory_closed=" << to_string(*row.theory_closed);
    os << '\n';
  }

  bool header = false;
  for (const auto& row : rows) {
    if (!row.closer) continue;
    if (!header) {
      os << "formula discrepancies (sum-route vs printed closed form):\n";
      header = true;
    }
    os << "  lambda=" << to_string(row.lambda) << ": empirical " << to_decimal(row.empirical) << " is closer to the "
       << (*row.closer == CloserFormula::Sum      ? "sum-route value"
           : *row.closer == CloserFormula::Closed ? "printed closed form"
                                                  : "two values equally")
       << " (dev_sum " << to_decimal(*row.dev_sum) << ", dev_closed " << to_decimal(*row.dev_closed) << ")\n";
  }
  return os.str();
}

}  // namespace braidstat
