#pragma once

#include <cstdint>

namespace fairdiv {

/// Deterministic 64-bit generator (splitmix64). Used everywhere randomness is
/// needed so results are identical across platforms and standard libraries.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform-ish value in [0, bound); bound 0 yields 0.
  std::uint64_t below(std::uint64_t bound) { return bound == 0 ? 0 : next() % bound; }
};

/// Stable way to derive independent streams from one seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  SplitMix64 rng(seed ^ (0x632be59bd9b4e019ull + salt * 0x9e3779b97f4a7c15ull));
  return rng.next();
}

}  // namespace fairdiv
