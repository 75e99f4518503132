#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hoeffding/error.hpp"

namespace ht {

/// Constant-memory streaming estimate of a fixed set of quantiles.
///
/// Each of the n estimates tracks the target probability p_i = i / (n + 1),
/// i = 1..n, by stochastic gradient descent on the pinball loss. The
/// gradient is the asymmetric signum
///
///     sgn_p(z) = 2(1 - p)  if z > 0
///              = -2p       if z < 0
///              = 0         otherwise
///
/// so an estimate q moves by -step * sgn_p(q - x) on every observation x.
/// Its stationary point satisfies P(x < q) = p. The first observation seeds
/// every estimate, and the array is re-sorted after each update so that the
/// estimates always describe a monotone quantile function.
template <std::floating_point Real = float>
class QuantileSketch {
 public:
  using value_type = Real;

  QuantileSketch(std::size_t n_quantiles, Real step)
      : estimates_(n_quantiles, Real{0}), step_(step) {
    if (n_quantiles == 0) throw InvalidArgument("quantile sketch needs at least one estimate");
    if (!(step > Real{0}) || !std::isfinite(step)) {
      throw InvalidArgument("quantile sketch step must be positive and finite");
    }
  }

  /// Rebuilds a sketch from previously exported state. `estimates` must be
  /// sorted; a zero count means the sketch was never seeded.
  static QuantileSketch restore(std::span<const Real> estimates, Real step, std::uint64_t count) {
    QuantileSketch sketch(estimates.size(), step);
    if (!std::is_sorted(estimates.begin(), estimates.end())) {
      throw InvalidArgument("restored quantile estimates are not sorted");
    }
    for (Real e : estimates) {
      if (!std::isfinite(e)) throw InvalidArgument("restored quantile estimate is not finite");
    }
    std::copy(estimates.begin(), estimates.end(), sketch.estimates_.begin());
    sketch.count_ = count;
    return sketch;
  }

  void update(Real x) {
    if (!std::isfinite(x)) throw InvalidArgument("quantile sketch observation is not finite");
    if (count_ == 0) {
      std::fill(estimates_.begin(), estimates_.end(), x);
    } else {
      const std::size_t n = estimates_.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Real p = static_cast<Real>(target(i));
        Real& q = estimates_[i];
        if (q > x) {
          q -= step_ * Real{2} * (Real{1} - p);
        } else if (q < x) {
          q += step_ * Real{2} * p;
        }
      }
      // Independent estimators can cross; project back onto monotone arrays.
      // A single update moves every estimate by at most one step, so the
      // array is nearly sorted and insertion sort is linear in practice.
      for (std::size_t i = 1; i < n; ++i) {
        const Real v = estimates_[i];
        std::size_t j = i;
        while (j > 0 && estimates_[j - 1] > v) {
          estimates_[j] = estimates_[j - 1];
          --j;
        }
        estimates_[j] = v;
      }
    }
    ++count_;
  }

  /// Quantile at probability p, interpolated linearly between knots and
  /// clamped to the outermost estimates.
  Real estimate(double p) const {
    require_seeded();
    if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("quantile probability must lie in (0,1)");
    const std::size_t n = estimates_.size();
    if (p <= target(0)) return estimates_.front();
    if (p >= target(n - 1)) return estimates_.back();
    // Targets are evenly spaced, so the bracketing knot is found directly.
    const double pos = p * static_cast<double>(n + 1) - 1.0;
    std::size_t i = static_cast<std::size_t>(pos);
    if (i >= n - 1) i = n - 2;
    const double frac = (p - target(i)) / (target(i + 1) - target(i));
    const double lo = estimates_[i];
    const double hi = estimates_[i + 1];
    return static_cast<Real>(lo + frac * (hi - lo));
  }

  /// Inverse of estimate(): the probability mass at or below v. Reads
  /// outside the estimated support clamp to the first/last target; runs of
  /// equal estimates resolve to the largest target in the run.
  double cdf_estimate(Real v) const {
    require_seeded();
    const std::size_t n = estimates_.size();
    if (v < estimates_.front()) return target(0);
    if (v >= estimates_.back()) return target(n - 1);
    const auto upper = std::upper_bound(estimates_.begin(), estimates_.end(), v);
    const std::size_t i = static_cast<std::size_t>(upper - estimates_.begin()) - 1;
    if (estimates_[i] == v) return target(i);
    const double lo = estimates_[i];
    const double hi = estimates_[i + 1];
    const double frac = (static_cast<double>(v) - lo) / (hi - lo);
    return target(i) + frac * (target(i + 1) - target(i));
  }

  double target(std::size_t i) const {
    return static_cast<double>(i + 1) / static_cast<double>(estimates_.size() + 1);
  }

  std::span<const Real> estimates() const { return estimates_; }
  std::size_t size() const { return estimates_.size(); }
  Real step() const { return step_; }
  std::uint64_t count() const { return count_; }
  bool seeded() const { return count_ > 0; }

  friend bool operator==(const QuantileSketch&, const QuantileSketch&) = default;

 private:
  void require_seeded() const {
    if (count_ == 0) throw InvalidArgument("quantile sketch has not absorbed any observation");
  }

  std::vector<Real> estimates_;
  Real step_;
  std::uint64_t count_ = 0;
};

}  // namespace ht
