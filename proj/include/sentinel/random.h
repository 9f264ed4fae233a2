#pragma once

#include <cstdint>
#include <random>

namespace sentinel {

/// Seeded generator used for every stochastic draw in an episode.
///
/// Wraps std::mt19937_64, whose output sequence is fixed by the standard.
/// Distributions are derived from raw 64-bit draws here instead of the
/// implementation-defined std:: distributions so that episodes reproduce
/// bit-for-bit across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection sampling removes modulo bias.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % bound;
  }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Per-run seed: splitmix64(splitmix64(base_seed) ^ run_index).
///
/// Hashing the base seed first keeps (base, run) and (base + 1, run - 1)
/// from colliding.
constexpr std::uint64_t episode_seed(std::uint64_t base_seed, std::uint64_t run_index) {
  return splitmix64(splitmix64(base_seed) ^ run_index);
}

}  // namespace sentinel
