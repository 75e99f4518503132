#pragma once

#include <cmath>
#include <cstdint>

#include "hoeffding/error.hpp"

namespace ht {

/// Hoeffding bound: with probability 1 - delta the observed mean of n
/// samples of a variable with range `range` lies within
/// sqrt(range^2 * ln(1/delta) / (2n)) of the true mean.
inline double hoeffding_bound(double range, double delta, std::uint64_t n) {
  if (n == 0) throw InvalidArgument("hoeffding_bound: n must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("hoeffding_bound: delta must lie in (0,1)");
  if (!(range >= 0.0) || !std::isfinite(range)) {
    throw InvalidArgument("hoeffding_bound: range must be finite and non-negative");
  }
  return std::sqrt(range * range * std::log(1.0 / delta) / (2.0 * static_cast<double>(n)));
}

}  // namespace ht
