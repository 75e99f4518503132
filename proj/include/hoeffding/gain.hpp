#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hoeffding/error.hpp"

namespace ht {

/// Shannon entropy in bits of the distribution proportional to `mass`.
/// Zero total mass has zero entropy.
inline double entropy_bits(std::span<const double> mass) {
  double total = 0.0;
  for (double m : mass) total += m;
  if (!(total > 0.0)) return 0.0;
  double h = 0.0;
  for (double m : mass) {
    if (m > 0.0) {
      const double p = m / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

/// Information gain of a binary partition in which a fraction
/// `left_fraction[k]` of the `counts[k]` samples of class k goes left.
/// Returns 0 when either side receives no mass.
inline double split_gain_from_fractions(std::span<const std::uint64_t> counts,
                                        std::span<const double> left_fraction) {
  if (counts.size() != left_fraction.size()) {
    throw InvalidArgument("split gain: counts and fractions differ in length");
  }
  const std::size_t k = counts.size();
  std::vector<double> parent(k), left(k), right(k);
  double left_total = 0.0;
  double right_total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    const double n = static_cast<double>(counts[c]);
    double f = left_fraction[c];
    f = f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
    parent[c] = n;
    left[c] = n * f;
    right[c] = n - left[c];
    left_total += left[c];
    right_total += right[c];
  }
  if (!(left_total > 0.0) || !(right_total > 0.0)) return 0.0;
  const double total = left_total + right_total;
  const double children = (left_total / total) * entropy_bits(left) + (right_total / total) * entropy_bits(right);
  const double gain = entropy_bits(parent) - children;
  // Rounding can leave a tiny negative residue when children mirror the parent.
  return gain > 0.0 ? gain : 0.0;
}

}  // namespace ht
