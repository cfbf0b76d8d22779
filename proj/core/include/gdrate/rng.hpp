#pragma once

// Deterministic random source. mt19937_64 is fully specified by the
// standard and doubles are derived from raw 53-bit draws, so streams are
// reproducible across platforms and standard libraries. The algorithm tag
// is recorded in verification reports.

#include <cstdint>
#include <random>

namespace gdrate {

inline constexpr const char* kRngAlgorithm = "mt19937_64-canonical53";

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Per-trial substream: master seed combined with a counter via splitmix64.
  static Rng for_trial(std::uint64_t master_seed, std::uint64_t trial) {
    std::uint64_t z = master_seed + 0x9e3779b97f4a7c15ull * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return Rng(z ^ (z >> 31));
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform01() - 1.0; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gdrate
