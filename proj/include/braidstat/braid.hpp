#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace braidstat {

/// A braid word on `strands` strands. Letter g stands for sigma_|g|, with the
/// sign of g as the crossing sign; every |g| lies in [1, strands - 1].
class BraidWord {
 public:
  BraidWord(int strands, std::vector<int> letters);

  int strands() const noexcept { return strands_; }
  const std::vector<int>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;

 private:
  int strands_;
  std::vector<int> letters_;
};

/// Exponent tuple (k_1, ..., k_{n-1}) naming sigma_1^k_1 ... sigma_{n-1}^k_{n-1}.
class FamilyTuple {
 public:
  explicit FamilyTuple(std::vector<std::int64_t> k);

  int strands() const noexcept { return static_cast<int>(k_.size()) + 1; }
  const std::vector<std::int64_t>& k() const noexcept { return k_; }

  friend bool operator==(const FamilyTuple&, const FamilyTuple&) = default;

 private:
  std::vector<std::int64_t> k_;
};

/// Parses "s1 s2^-2 s3^4". Throws ParseError or GeneratorOutOfRange.
BraidWord parse_braid_word(std::string_view text, int strands);

/// Parses a JSON array of signed generator indices, e.g. "[1,-2,-2]".
BraidWord parse_braid_json(std::string_view text, int strands);

/// Parses a comma-separated exponent list "2,3" (n is one more than the count).
FamilyTuple parse_family_tuple(std::string_view text);

std::string to_string(const BraidWord& b);
nlohmann::ordered_json to_json(const BraidWord& b);

BraidWord family_word(const FamilyTuple& t);

/// Sum of the exponents, which is also the braid-group word norm of b_k.
std::int64_t family_word_length(const FamilyTuple& t);

/// Underlying permutation on {0, ..., n-1} (0-based): element i is the end
/// position of the strand that starts at position i, reading the word from
/// its first letter (bottom of the braid) to its last.
std::vector<int> underlying_permutation(const BraidWord& b);

/// Number of cycles of the underlying permutation, i.e. link components of
/// the closure.
int closure_component_count(const BraidWord& b);

}  // namespace braidstat
