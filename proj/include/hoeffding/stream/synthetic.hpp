#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/params.hpp"

namespace ht {

/// K Gaussian clusters in D dimensions. Centers are drawn uniformly from
/// [-center_box, center_box]^D; each point is its center plus isotropic
/// noise of standard deviation `spread`.
struct DatasetSpec {
  std::uint32_t clusters = 5;
  std::uint32_t dims = 3;
  std::uint64_t samples = 40000;
  double spread = 0.01;
  double center_box = 1.0;
  std::uint64_t seed = 1;

  void validate() const {
    if (clusters < 2) throw InvalidArgument("dataset needs at least 2 clusters");
    if (dims < 1) throw InvalidArgument("dataset needs at least 1 dimension");
    if (samples < 1) throw InvalidArgument("dataset needs at least 1 sample");
    if (!(spread > 0.0)) throw InvalidArgument("cluster spread must be positive");
    if (!(center_box > 0.0)) throw InvalidArgument("center box half-width must be positive");
  }
};

/// Cluster centers, row-major (cluster, attribute). These are the first
/// draws of the generator, so they match generate_clusters for the same spec.
inline std::vector<double> cluster_centers(const DatasetSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> box(-spec.center_box, spec.center_box);
  std::vector<double> centers(static_cast<std::size_t>(spec.clusters) * spec.dims);
  for (auto& c : centers) c = box(rng);
  return centers;
}

/// Labels cycle 0, 1, ..., K-1, 0, ... so every class count is within one
/// of N/K. All samples are flagged for training.
inline std::vector<Sample> generate_clusters(const DatasetSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> box(-spec.center_box, spec.center_box);
  std::vector<double> centers(static_cast<std::size_t>(spec.clusters) * spec.dims);
  for (auto& c : centers) c = box(rng);

  std::normal_distribution<double> noise(0.0, spec.spread);
  std::vector<Sample> out;
  out.reserve(spec.samples);
  for (std::uint64_t i = 0; i < spec.samples; ++i) {
    const auto k = static_cast<Label>(i % spec.clusters);
    Sample s;
    s.label = k;
    s.train = true;
    s.features.resize(spec.dims);
    for (std::uint32_t d = 0; d < spec.dims; ++d) {
      s.features[d] = static_cast<float>(centers[static_cast<std::size_t>(k) * spec.dims + d] + noise(rng));
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ht
