#pragma once

#include <cstdint>

// Deterministic randomness for the whole toolkit. Everything that needs random
// bits draws them from SplitMix64 below, never from libc or libstdc++
// facilities, so a seed produces the same bytes on every platform and compiler.
//
// SplitMix64: the state advances by the 64-bit golden-ratio constant and each
// output is the finalizer z ^= z>>30, z *= 0xBF58476D1CE4E5B9, z ^= z>>27,
// z *= 0x94D049BB133111EB, z ^= z>>31 applied to the new state.

namespace pbs {

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += kGoldenGamma;
    return mix64(state_);
  }

  // Uniform draw from [0, bound), bound >= 1. Rejection sampling, so the
  // result is unbiased for every bound, not just powers of two.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;  // 2^64 mod bound
    const std::uint64_t limit = 0 - rem;                         // multiple of bound, or 0 when all values pass
    for (;;) {
      const std::uint64_t v = next();
      if (rem == 0 || v < limit) return v % bound;
    }
  }

 private:
  std::uint64_t state_;
};

// Stream seed for benchmark replicate i at setup value d. Replicates are
// addressable: the instance at (d, i) never depends on evaluation order or on
// how many replicates ran before it.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t d, std::uint64_t i) {
  return mix64(mix64(seed + kGoldenGamma * (d + 1)) + kGoldenGamma * (i + 1));
}

}  // namespace pbs
