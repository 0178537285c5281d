#include "halftree/rng.hpp"

#include "halftree/check.hpp"

namespace halftree {

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  HALFTREE_CHECK(lo <= hi, "empty uniform range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(bits() % span);
}

Rational Rng::nonzero_rational(int bound) {
  HALFTREE_CHECK(bound >= 1, "value range must be >= 1");
  const long num = static_cast<long>(uniform(1, bound));
  const long den = static_cast<long>(uniform(1, bound));
  const long sign = uniform(0, 1) == 0 ? 1 : -1;
  return Rational(sign * num, den);
}

bool Rng::chance(double p) {
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  const auto threshold = static_cast<std::uint64_t>(p * 1000.0);
  return bits() % 1000 < threshold;
}

}  // namespace halftree
