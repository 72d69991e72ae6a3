#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace braidstat {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::vector<std::string> failure_samples;  // first few failing cases

  bool passed() const noexcept { return failures == 0; }
};

/// Names accepted by run_suite, in a fixed order.
const std::vector<std::string>& suite_names();

/// Throws Error(UnknownSuite) for names not in suite_names().
SuiteResult run_suite(std::string_view name);

// Individual suites, also used by the acceptance binary.
SuiteResult verify_burau_vs_product();  // grid n in 2..5, k_i in 1..6, plus 500 seeded random tuples
SuiteResult verify_lemma_lambda(std::int64_t max_r = 2000);  // p in {3, 5, 7}
SuiteResult verify_braid_relations(int max_n = 6);
SuiteResult verify_mu_zero();  // same grid as burau-vs-product
SuiteResult verify_compositions(std::int64_t max_lam = 40, int max_j = 6);  // DP vs brute force, p in {3, 5}

}  // namespace braidstat
