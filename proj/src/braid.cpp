#include "braidstat/braid.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

#include "braidstat/error.hpp"

namespace braidstat {

BraidWord::BraidWord(int strands, std::vector<int> letters)
    : strands_(strands), letters_(std::move(letters)) {
  if (strands_ < 2) throw Error(ErrorCode::InvalidArgument, "a braid needs at least 2 strands");
  for (int g : letters_) {
    if (g == 0 || std::abs(g) >= strands_)
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "generator s" + std::to_string(std::abs(g)) + " does not exist on " +
                      std::to_string(strands_) + " strands");
  }
}

FamilyTuple::FamilyTuple(std::vector<std::int64_t> k) : k_(std::move(k)) {
  if (k_.empty()) throw Error(ErrorCode::InvalidArgument, "family tuple needs n - 1 >= 1 entries");
  for (auto v : k_)
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "family exponents must be non-negative");
}

namespace {

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

BraidWord parse_braid_word(std::string_view text, int strands) {
  if (strands < 2) throw Error(ErrorCode::InvalidArgument, "a braid needs at least 2 strands");
  std::vector<int> letters;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    const std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    std::string_view tok = text.substr(start, pos - start);
    skip_ws();

    if (tok.size() < 2 || tok[0] != 's')
      throw Error(ErrorCode::ParseError, "expected a term like s2 or s2^-3, got '" + std::string(tok) + "'");
    std::string_view index_part = tok.substr(1);
    std::string_view exp_part;
    if (auto caret = index_part.find('^'); caret != std::string_view::npos) {
      exp_part = index_part.substr(caret + 1);
      index_part = index_part.substr(0, caret);
    }
    int index = 0;
    if (index_part.empty() || index_part[0] == '-' || index_part[0] == '+' || !parse_int(index_part, index))
      throw Error(ErrorCode::ParseError, "bad generator index in '" + std::string(tok) + "'");
    long exponent = 1;
    if (tok.find('^') != std::string_view::npos) {
      if (!exp_part.empty() && exp_part[0] == '+') exp_part.remove_prefix(1);
      if (!parse_int(exp_part, exponent))
        throw Error(ErrorCode::ParseError, "bad exponent in '" + std::string(tok) + "'");
    }
    if (index < 1 || index >= strands)
      throw Error(ErrorCode::GeneratorOutOfRange,
                  "generator s" + std::to_string(index) + " does not exist on " + std::to_string(strands) +
                      " strands");
    const int letter = exponent < 0 ? -index : index;
    for (long e = 0; e < std::labs(exponent); ++e) letters.push_back(letter);
  }
  return BraidWord(strands, std::move(letters));
}

BraidWord parse_braid_json(std::string_view text, int strands) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad braid JSON: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorCode::ParseError, "braid JSON must be an array of integers");
  std::vector<int> letters;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw Error(ErrorCode::ParseError, "braid JSON must be an array of integers");
    letters.push_back(v.get<int>());
  }
  return BraidWord(strands, std::move(letters));
}

FamilyTuple parse_family_tuple(std::string_view text) {
  std::vector<std::int64_t> k;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    std::string_view field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.front()))) field.remove_prefix(1);
    while (!field.empty() && std::isspace(static_cast<unsigned char>(field.back()))) field.remove_suffix(1);
    std::int64_t v = 0;
    if (!parse_int(field, v)) throw Error(ErrorCode::ParseError, "bad family exponent '" + std::string(field) + "'");
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "family exponents must be non-negative");
    k.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return FamilyTuple(std::move(k));
}

std::string to_string(const BraidWord& b) {
  std::ostringstream os;
  const auto& w = b.letters();
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    const long run = static_cast<long>(j - i);
    if (i > 0) os << ' ';
    os << 's' << std::abs(w[i]);
    const long e = w[i] < 0 ? -run : run;
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

nlohmann::ordered_json to_json(const BraidWord& b) {
  nlohmann::ordered_json j;
  j["strands"] = b.strands();
  j["letters"] = b.letters();
  return j;
}

BraidWord family_word(const FamilyTuple& t) {
  std::vector<int> letters;
  letters.reserve(static_cast<std::size_t>(family_word_length(t)));
  for (std::size_t i = 0; i < t.k().size(); ++i)
    letters.insert(letters.end(), static_cast<std::size_t>(t.k()[i]), static_cast<int>(i) + 1);
  return BraidWord(t.strands(), std::move(letters));
}

std::int64_t family_word_length(const FamilyTuple& t) {
  return std::accumulate(t.k().begin(), t.k().end(), std::int64_t{0});
}

std::vector<int> underlying_permutation(const BraidWord& b) {
  // at[pos] = starting position of the strand currently at pos
  std::vector<int> at(static_cast<std::size_t>(b.strands()));
  std::iota(at.begin(), at.end(), 0);
  for (int g : b.letters()) {
    const auto i = static_cast<std::size_t>(std::abs(g) - 1);
    std::swap(at[i], at[i + 1]);
  }
  std::vector<int> perm(at.size());
  for (std::size_t pos = 0; pos < at.size(); ++pos) perm[static_cast<std::size_t>(at[pos])] = static_cast<int>(pos);
  return perm;
}

int closure_component_count(const BraidWord& b) {
  const auto perm = underlying_permutation(b);
  std::vector<bool> seen(perm.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) seen[j] = true;
  }
  return cycles;
}

}  // namespace braidstat
