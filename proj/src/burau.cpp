#include "braidstat/burau.hpp"

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

#include "braidstat/error.hpp"

namespace braidstat {
namespace {

const LaurentPoly kOne = LaurentPoly::constant(1);
const LaurentPoly kT = LaurentPoly::monomial(1, 1);

void check_index(int n, int i) {
  if (n < 2) throw Error(ErrorCode::IndexOutOfRange, "Burau matrices need n >= 2");
  if (i < 1 || i > n - 1)
    throw Error(ErrorCode::IndexOutOfRange,
                "generator index " + std::to_string(i) + " outside [1, " + std::to_string(n - 1) + "]");
}

LaurentMatrix unreduced_forward(int n, int i) {
  auto m = LaurentMatrix::identity(static_cast<std::size_t>(n));
  const auto a = static_cast<std::size_t>(i - 1);
  m.at(a, a) = kOne - kT;
  m.at(a, a + 1) = kT;
  m.at(a + 1, a) = kOne;
  m.at(a + 1, a + 1) = LaurentPoly();
  return m;
}

LaurentMatrix reduced_forward(int n, int i) {
  auto m = LaurentMatrix::identity(static_cast<std::size_t>(n - 1));
  const auto c = static_cast<std::size_t>(i - 1);
  m.at(c, c) = -kT;
  if (i >= 2) m.at(c - 1, c) = kT;
  if (i <= n - 2) m.at(c + 1, c) = kOne;
  return m;
}

// Populate-once cache of generator matrices keyed by (kind, n, i, inverse).
// Entries are never erased, so references stay valid for the process lifetime.
class GeneratorCache {
 public:
  const LaurentMatrix& get(BurauKind kind, int n, int i, bool inv) {
    const Key key{kind == BurauKind::Reduced, n, i, inv};
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return *it->second;
    LaurentMatrix fwd = kind == BurauKind::Reduced ? reduced_forward(n, i) : unreduced_forward(n, i);
    auto m = std::make_unique<LaurentMatrix>(inv ? inverse(fwd) : std::move(fwd));
    return *cache_.emplace(key, std::move(m)).first->second;
  }

 private:
  using Key = std::tuple<bool, int, int, bool>;
  std::mutex mutex_;
  std::map<Key, std::unique_ptr<LaurentMatrix>> cache_;
};

GeneratorCache& cache() {
  static GeneratorCache instance;
  return instance;
}

}  // namespace

LaurentMatrix burau_generator(int n, int i, bool inverse) {
  check_index(n, i);
  return cache().get(BurauKind::Unreduced, n, i, inverse);
}

LaurentMatrix reduced_burau_generator(int n, int i, bool inverse) {
  check_index(n, i);
  return cache().get(BurauKind::Reduced, n, i, inverse);
}

LaurentMatrix burau_image(const BraidWord& b, BurauKind kind) {
  const int n = b.strands();
  const auto dim = static_cast<std::size_t>(kind == BurauKind::Reduced ? n - 1 : n);
  auto acc = LaurentMatrix::identity(dim);
  for (int g : b.letters()) acc = acc * cache().get(kind, n, std::abs(g), g < 0);
  return acc;
}

LaurentPoly alexander_closed_braid(const BraidWord& b) {
  const int n = b.strands();
  const auto image = burau_image(b, BurauKind::Reduced);
  const auto d = determinant(LaurentMatrix::identity(image.dim()) - image);
  if (d.is_zero()) return {};
  const LaurentPoly numerator = (kOne - kT) * d;
  const LaurentPoly denominator = kOne - LaurentPoly::monomial(1, n);
  return normalize_unit(exact_div(numerator, denominator));
}

LaurentPoly torus_f(std::int64_t r) {
  if (r < 0) throw Error(ErrorCode::InvalidArgument, "torus_f needs r >= 0");
  if (r == 0) return {};
  const BigInt sign = r % 2 == 0 ? 1 : -1;
  // 1 - (-1)^r t^r
  LaurentPoly num = kOne - LaurentPoly::monomial(sign, r);
  return exact_div(num, kOne + kT);
}

LaurentPoly alexander_family_product(const FamilyTuple& t) {
  LaurentPoly acc = kOne;
  for (auto k : t.k()) {
    if (k == 0) return {};
    acc *= torus_f(k);
  }
  return normalize_unit(acc);
}

}  // namespace braidstat
