#pragma once

#include <cstdint>
#include <random>

#include "ccseg/errors.hpp"

namespace ccseg {

/// Deterministic random source shared by every stochastic component.
///
/// All draws go through the helpers below, which are defined directly on top
/// of std::mt19937_64's standard-specified output stream. A given seed
/// therefore produces the same draw sequence on every platform and standard
/// library, which is what makes seeded runs byte-reproducible. The standard
/// <random> distributions are deliberately not used: their output is
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform integer in [0, bound). Unbiased via rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) {
      throw InvalidInputError("Rng::next_below: bound must be positive");
    }
    const std::uint64_t limit = UINT64_MAX / bound * bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw >= limit);
    return draw % bound;
  }

  /// Uniform in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with the given probability.
  bool next_event(double probability) { return next_unit() < probability; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace ccseg
