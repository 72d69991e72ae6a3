#pragma once

#include <cstdint>

#include "braidstat/laurent.hpp"

namespace braidstat {

/// Counter-based random stream keyed by (seed, stream index). Draw k of stream
/// i is a pure function of (seed, i, k), so parallel workers reproduce exactly
/// the same samples regardless of how the index range is split.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next() {
    // Two SplitMix64 finalizer rounds over the key and counter.
    std::uint64_t z = mix(seed_ + 0x9E3779B97F4A7C15ULL);
    z = mix(z ^ (stream_ * 0xD1B54A32D192ED03ULL));
    z = mix(z + (counter_++ + 1) * 0x9E3779B97F4A7C15ULL);
    return z;
  }

  /// Uniform integer in [0, bound), bound > 0, by rejection on the bit length.
  BigInt uniform_below(const BigInt& bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace braidstat
