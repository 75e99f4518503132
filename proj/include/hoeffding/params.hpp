#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <string>
#include <vector>

#include "hoeffding/error.hpp"

namespace ht {

using Label = std::uint32_t;
using NodeIndex = std::uint32_t;

/// Every tunable constant of the learner. Defaults are delta=0.001,
/// lambda=0.01, tau=0.05, n_min=200, n_pt=10, 16 quantiles and 2047 nodes;
/// dims and classes must be set per dataset.
///
/// The real-valued fields are stored in single precision so that a tree
/// survives a round trip through its flat serialized form unchanged.
struct Hyperparams {
  float delta = 0.001f;           ///< split confidence is 1 - delta
  float lambda = 0.01f;           ///< quantile sketch step, attribute units
  float tau = 0.05f;              ///< tie-break threshold on the bound
  std::uint32_t n_min = 200;      ///< samples between split attempts at a leaf
  std::uint32_t n_pt = 10;        ///< candidate thresholds per attribute
  std::uint32_t n_quantiles = 16; ///< estimates per sketch
  std::uint32_t max_nodes = 2047; ///< arena capacity
  std::uint32_t dims = 1;         ///< feature count D
  std::uint32_t classes = 2;      ///< label count K

  void validate() const {
    auto fail = [](const std::string& what) { throw InvalidArgument("invalid hyperparameters: " + what); };
    if (!(delta > 0.0f && delta < 1.0f)) fail("delta must lie in (0,1)");
    if (!(lambda > 0.0f) || !std::isfinite(lambda)) fail("lambda must be positive and finite");
    if (!(tau >= 0.0f) || !std::isfinite(tau)) fail("tau must be non-negative and finite");
    if (n_min == 0) fail("n_min must be positive");
    if (n_quantiles == 0) fail("n_quantiles must be positive");
    if (n_pt == 0 || n_pt > n_quantiles) fail("n_pt must lie in [1, n_quantiles]");
    if (max_nodes == 0) fail("max_nodes must be positive");
    if (dims == 0) fail("dims must be positive");
    if (classes < 2) fail("classes must be at least 2");
  }

  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

/// One observation. `label` is only meaningful when `train` is set.
template <std::floating_point Real = float>
struct BasicSample {
  std::vector<Real> features;
  Label label = 0;
  bool train = true;

  friend bool operator==(const BasicSample&, const BasicSample&) = default;
};

using Sample = BasicSample<float>;

}  // namespace ht
