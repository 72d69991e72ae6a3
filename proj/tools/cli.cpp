#include "cli.hpp"

#include <cstdlib>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "braidstat/arithstat.hpp"
#include "braidstat/braid.hpp"
#include "braidstat/burau.hpp"
#include "braidstat/census.hpp"
#include "braidstat/error.hpp"
#include "braidstat/iwasawa.hpp"
#include "braidstat/verify.hpp"
#include "json.hpp"

namespace braidstat::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Common {
  Format format = Format::Text;
  unsigned workers = 1;
  std::uint64_t budget = kDefaultTupleBudget;
};

unsigned default_workers() {
  if (const char* env = std::getenv("BRAIDSTAT_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string rational_cell(const Rational& r) { return to_string(r) + " (" + to_decimal(r) + ")"; }

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::BudgetExceeded: return kBudget;
    case ErrorCode::VerificationFailed: return kVerification;
    default: return kValidation;
  }
}

struct InputFlags {
  std::optional<std::string> braid;
  std::optional<int> strands;
  std::optional<std::string> family;
};

void add_input_flags(CLI::App* cmd, InputFlags& in) {
  auto* b = cmd->add_option("--braid", in.braid, "braid word, e.g. \"s1^3 s2^-1\" or a JSON list [1,-2]");
  auto* n = cmd->add_option("--n", in.strands, "number of strands for --braid")->check(CLI::Range(2, 4096));
  auto* f = cmd->add_option("--family", in.family, "family tuple k_1,...,k_{n-1}");
  b->excludes(f);
  n->needs(b);
}

BraidWord braid_from(const InputFlags& in) {
  if (!in.strands) throw Error(ErrorCode::InvalidArgument, "--braid needs --n");
  const auto& text = *in.braid;
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && text[first] == '[') return parse_braid_json(text, *in.strands);
  return parse_braid_word(text, *in.strands);
}

json input_json(const InputFlags& in) {
  if (in.family) return json{{"family", *in.family}};
  return json{{"braid", *in.braid}, {"n", *in.strands}};
}

void require_input(const InputFlags& in) {
  if (!in.braid && !in.family) throw Error(ErrorCode::InvalidArgument, "give --braid with --n, or --family");
}

// alex ---------------------------------------------------------------------

int cmd_alex(const InputFlags& in, const std::string& method_flag, const Common& c, std::ostream& out) {
  require_input(in);
  const bool family = in.family.has_value();
  const std::string method = method_flag.empty() ? (family ? "product" : "burau") : method_flag;
  if (!family && method == "product")
    throw Error(ErrorCode::InvalidArgument, "--method product needs a --family input");

  std::optional<LaurentPoly> burau, product;
  if (family) {
    const auto t = parse_family_tuple(*in.family);
    if (method != "burau") product = alexander_family_product(t);
    if (method != "product") burau = alexander_closed_braid(family_word(t));
  } else {
    burau = alexander_closed_braid(braid_from(in));
  }
  const bool compared = burau && product;
  const bool agree = !compared || *burau == *product;

  switch (c.format) {
    case Format::Text:
      if (!compared) {
        out << to_string(burau ? *burau : *product) << '\n';
      } else {
        out << "burau:   " << to_string(*burau) << '\n'
            << "product: " << to_string(*product) << '\n'
            << "agree:   " << (agree ? "yes" : "no") << '\n';
      }
      break;
    case Format::Json: {
      json j;
      j["input"] = input_json(in);
      j["method"] = method;
      auto poly = [](const LaurentPoly& f) {
        json p = to_json(f);
        p["text"] = to_string(f);
        return p;
      };
      if (burau) j["burau"] = poly(*burau);
      if (product) j["product"] = poly(*product);
      if (compared) j["agree"] = agree;
      emit_json(out, j);
      break;
    }
    case Format::Csv:
      out << "method,polynomial\n";
      if (burau) out << "burau," << to_string(*burau) << '\n';
      if (product) out << "product," << to_string(*product) << '\n';
      break;
  }
  if (!agree) throw Error(ErrorCode::VerificationFailed, "Burau and product formula disagree");
  return kOk;
}

// iwasawa ------------------------------------------------------------------

int cmd_iwasawa(const InputFlags& in, std::int64_t prime, bool fast, bool exact, int precision, const Common& c,
                std::ostream& out) {
  require_input(in);
  const OddPrime p(prime);
  if (fast && exact) throw Error(ErrorCode::InvalidArgument, "--fast and --exact are exclusive");
  if (fast && !in.family) throw Error(ErrorCode::InvalidArgument, "--fast applies to --family inputs only");

  std::optional<FamilyTuple> tuple;
  std::optional<BraidWord> braid;
  if (in.family) {
    tuple = parse_family_tuple(*in.family);
  } else {
    braid = braid_from(in);
  }

  std::string method;
  std::optional<IwasawaInvariants> inv;
  if (fast) {
    const auto lam = lambda_family_fast(*tuple, p);
    inv = IwasawaInvariants{p, lam.is_infinite() ? ExtendedNat::infinity() : ExtendedNat::finite(0), lam};
    method = "lemma";
  } else if (!exact) {
    try {
      inv = tuple ? invariants_modular(*tuple, p, precision) : invariants_modular(*braid, p, precision);
      method = "modular";
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BudgetExceeded) throw;
    }
  }
  if (!inv) {
    const auto delta = alexander_closed_braid(tuple ? family_word(*tuple) : *braid);
    inv = invariants_exact(complete(delta), p);
    method = "exact";
  }

  switch (c.format) {
    case Format::Text:
      out << "mu=" << to_string(inv->mu) << " lambda=" << to_string(inv->lambda) << '\n';
      break;
    case Format::Json: {
      json j = to_json(*inv);
      j["method"] = method;
      j["input"] = input_json(in);
      emit_json(out, j);
      break;
    }
    case Format::Csv:
      out << "p,mu,lambda,method\n"
          << p.value() << ',' << to_string(inv->mu) << ',' << to_string(inv->lambda) << ',' << method << '\n';
      break;
  }
  return kOk;
}

// density ------------------------------------------------------------------

int cmd_density_theory(int n, std::int64_t prime, std::int64_t lam, const Common& c, std::ostream& out) {
  const OddPrime p(prime);
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "--n must be >= 2");
  if (lam < 0) throw Error(ErrorCode::InvalidArgument, "--lambda must be >= 0");
  const Rational sum = density_n_sum(n, lam, p);
  const Rational closed = density_n_closed_column(n, lam, p);

  switch (c.format) {
    case Format::Text:
      out << "n=" << n << " p=" << p.value() << " lambda=" << lam << '\n'
          << "theory_sum:    " << rational_cell(sum) << '\n'
          << "theory_closed: " << rational_cell(closed) << '\n';
      if (sum != closed) out << "note: the sum-route value and the printed closed form differ at this lambda\n";
      break;
    case Format::Json:
      emit_json(out, json{{"n", n},
                          {"p", p.value()},
                          {"lambda", lam},
                          {"theory_sum", to_json(sum)},
                          {"theory_closed", to_json(closed)},
                          {"formulas_agree", sum == closed}});
      break;
    case Format::Csv:
      out << "n,p,lambda,theory_sum,theory_sum_decimal,theory_closed,theory_closed_decimal\n"
          << n << ',' << p.value() << ',' << lam << ',' << to_string(sum) << ',' << to_decimal(sum) << ','
          << to_string(closed) << ',' << to_decimal(closed) << '\n';
      break;
  }
  return kOk;
}

struct CensusFlags {
  int n = 2;
  std::int64_t prime = 3;
  std::int64_t max_x = 0;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::optional<double> verify_slow;
};

int cmd_density_census(const CensusFlags& f, const Common& c, std::ostream& out) {
  const OddPrime p(f.prime);
  CensusOptions opts;
  opts.workers = c.workers;
  opts.budget = c.budget;
  if (f.verify_slow) {
    opts.verify_slow_fraction = *f.verify_slow;
    opts.verify_seed = f.seed;
  }
  const CensusReport report = f.samples ? census_montecarlo(f.n, p, f.max_x, *f.samples, f.seed, opts)
                                        : census_exhaustive(f.n, p, f.max_x, opts);
  switch (c.format) {
    case Format::Text: out << to_text(report); break;
    case Format::Json: emit_json(out, to_json(report)); break;
    case Format::Csv: out << to_csv(report); break;
  }
  return kOk;
}

// compositions -------------------------------------------------------------

int cmd_compositions(std::int64_t prime, std::int64_t lam, int length, bool list, const Common& c,
                     std::ostream& out) {
  const OddPrime p(prime);
  const auto result = compositions_p_power(length, lam, p, list);
  switch (c.format) {
    case Format::Text:
      out << result.count.get_str() << '\n';
      for (const auto& comp : result.list) {
        out << '(';
        for (std::size_t i = 0; i < comp.size(); ++i) out << (i ? ", " : "") << comp[i];
        out << ")\n";
      }
      break;
    case Format::Json: {
      json j{{"p", p.value()}, {"lambda", lam}, {"length", length}, {"count", result.count.get_str()}};
      if (list) j["list"] = result.list;
      emit_json(out, j);
      break;
    }
    case Format::Csv:
      if (!list) {
        out << "count\n" << result.count.get_str() << '\n';
      } else {
        out << "composition\n";
        for (const auto& comp : result.list) {
          out << '"';
          for (std::size_t i = 0; i < comp.size(); ++i) out << (i ? "," : "") << comp[i];
          out << "\"\n";
        }
      }
      break;
  }
  return kOk;
}

// verify -------------------------------------------------------------------

int cmd_verify(const std::string& suite, const Common& c, std::ostream& out) {
  std::vector<SuiteResult> results;
  if (suite == "all") {
    for (const auto& name : suite_names()) results.push_back(run_suite(name));
  } else {
    results.push_back(run_suite(suite));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.passed();

  switch (c.format) {
    case Format::Text:
      for (const auto& r : results) {
        out << r.name << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.checks << " checks, " << r.failures
            << " failures)\n";
        for (const auto& s : r.failure_samples) out << "  " << s << '\n';
      }
      break;
    case Format::Json: {
      auto arr = json::array();
      for (const auto& r : results)
        arr.push_back(json{{"suite", r.name},
                           {"passed", r.passed()},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"failure_samples", r.failure_samples}});
      emit_json(out, json{{"passed", ok}, {"suites", arr}});
      break;
    }
    case Format::Csv:
      out << "suite,passed,checks,failures\n";
      for (const auto& r : results)
        out << r.name << ',' << (r.passed() ? "true" : "false") << ',' << r.checks << ',' << r.failures << '\n';
      break;
  }
  return ok ? kOk : kVerification;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"braidstat: Alexander polynomials, Iwasawa invariants and lambda densities of braid closures"};
  app.require_subcommand(1);

  Common common;
  common.workers = default_workers();
  const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
  app.add_option("--format", common.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--workers", common.workers, "worker threads (default: $BRAIDSTAT_WORKERS or the CPU count)")
      ->check(CLI::Range(1u, 4096u));
  app.add_option("--budget", common.budget, "maximum tuples for an exhaustive census")->capture_default_str();

  // Global options are also accepted after the subcommand name.
  auto add_globals = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--workers", common.workers, "worker threads")->check(CLI::Range(1u, 4096u));
    sub->add_option("--budget", common.budget, "maximum tuples for an exhaustive census");
  };

  std::function<int()> action;

  InputFlags alex_in;
  std::string alex_method;
  auto* alex = app.add_subcommand("alex", "Alexander polynomial of a closed braid or family tuple");
  add_input_flags(alex, alex_in);
  alex->add_option("--method", alex_method, "burau, product or both")
      ->check(CLI::IsMember({"burau", "product", "both"}));
  add_globals(alex);
  alex->callback([&] { action = [&] { return cmd_alex(alex_in, alex_method, common, out); }; });

  InputFlags iw_in;
  std::int64_t iw_prime = 0;
  bool iw_fast = false, iw_exact = false;
  int iw_precision = kDefaultModularBudget;
  auto* iw = app.add_subcommand("iwasawa", "Iwasawa mu and lambda invariants at an odd prime");
  add_input_flags(iw, iw_in);
  iw->add_option("--prime", iw_prime, "odd prime p")->required();
  iw->add_flag("--fast", iw_fast, "closed-form lambda for family tuples");
  iw->add_flag("--exact", iw_exact, "skip the modular path");
  iw->add_option("--precision", iw_precision, "largest B tried by the modular path (mod p^B)")
      ->check(CLI::Range(1, 4096))
      ->capture_default_str();
  add_globals(iw);
  iw->callback([&] {
    action = [&] { return cmd_iwasawa(iw_in, iw_prime, iw_fast, iw_exact, iw_precision, common, out); };
  });

  auto* density = app.add_subcommand("density", "lambda densities: theory values or an empirical census");
  density->require_subcommand(1);

  int th_n = 2;
  std::int64_t th_prime = 0, th_lambda = 0;
  auto* theory = density->add_subcommand("theory", "sum-route and printed closed-form densities");
  theory->add_option("--n", th_n, "strands")->required();
  theory->add_option("--prime", th_prime, "odd prime p")->required();
  theory->add_option("--lambda", th_lambda, "lambda >= 0")->required();
  add_globals(theory);
  theory->callback([&] { action = [&] { return cmd_density_theory(th_n, th_prime, th_lambda, common, out); }; });

  CensusFlags cf;
  auto* census = density->add_subcommand("census", "exhaustive or Monte-Carlo census over sum(k) <= max-x");
  census->add_option("--n", cf.n, "strands")->required();
  census->add_option("--prime", cf.prime, "odd prime p")->required();
  census->add_option("--max-x", cf.max_x, "simplex bound x")->required();
  census->add_option("--samples", cf.samples, "Monte-Carlo sample count (omit for exhaustive)");
  census->add_option("--seed", cf.seed, "Monte-Carlo seed")->capture_default_str();
  census
      ->add_option("--verify-slow", cf.verify_slow,
                   "re-check a fraction of tuples through the exact pipeline (default fraction 0.001)")
      ->expected(0, 1)
      ->default_str("0.001")
      ->check(CLI::Range(0.0, 1.0));
  add_globals(census);
  census->callback([&] { action = [&] { return cmd_density_census(cf, common, out); }; });

  std::int64_t co_prime = 0, co_lambda = 0;
  int co_length = 1;
  bool co_list = false;
  auto* comp = app.add_subcommand("compositions", "compositions of lambda into p-power parts");
  comp->add_option("--prime", co_prime, "odd prime p")->required();
  comp->add_option("--lambda", co_lambda, "lambda >= 1")->required();
  comp->add_option("--length", co_length, "number of parts j >= 1")->required();
  comp->add_flag("--list", co_list, "also list the compositions lexicographically");
  add_globals(comp);
  comp->callback(
      [&] { action = [&] { return cmd_compositions(co_prime, co_lambda, co_length, co_list, common, out); }; });

  std::string suite;
  auto* verify = app.add_subcommand("verify", "run an oracle suite");
  std::string names = "all";
  for (const auto& s : suite_names()) names += ", " + s;
  verify->add_option("suite", suite, "suite name: " + names)->required();
  add_globals(verify);
  verify->callback([&] { action = [&] { return cmd_verify(suite, common, out); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    return action ? action() : kValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
}

}  // namespace braidstat::cli
