#pragma once

#include <cstdint>
#include <random>

namespace mfas {

// Platform-independent draws on top of mt19937_64 (the standard
// distributions are implementation-defined, which would break seeded
// reproducibility of generated instances).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// True with probability numer / denom.
  bool chance(std::uint64_t numer, std::uint64_t denom) { return below(denom) < numer; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mfas
