#pragma once

#include <cstdint>
#include <random>

#include "halftree/rational.hpp"

namespace halftree {

/// Deterministic random source. Only raw mt19937_64 outputs are consumed
/// (no standard-library distributions), so the stream is identical across
/// platforms and standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform integer in [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

  /// Nonzero rational with |numerator| in [1, bound] and denominator in [1, bound].
  Rational nonzero_rational(int bound);

  /// True with probability ~p (p in [0,1], millesimal resolution).
  bool chance(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace halftree
