#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/params.hpp"
#include "hoeffding/tree.hpp"

namespace ht {

/// An ordered batch of flagged samples handed to one kernel invocation.
struct Bundle {
  std::vector<Sample> samples;
  std::size_t capacity = 0;

  explicit Bundle(std::size_t cap) : capacity(cap) {
    if (cap == 0) throw InvalidArgument("bundle capacity must be positive");
    samples.reserve(cap);
  }

  bool full() const { return samples.size() >= capacity; }

  void push(Sample s) {
    if (full()) throw InvalidArgument("bundle is full");
    if (!samples.empty() && s.features.size() != samples.front().features.size()) {
      throw DataError("bundle samples must share one dimensionality");
    }
    samples.push_back(std::move(s));
  }
};

/// Kernel entry point: a tree, an input sample array, an output label
/// array and (implicitly, through the spans) their length. Samples are
/// processed strictly in order; a training sample yields the prediction
/// made before it was absorbed, an inference sample leaves the tree alone.
template <std::floating_point Real>
void process_bundle(HoeffdingTree<Real>& tree, std::span<const BasicSample<Real>> samples, std::span<Label> out) {
  if (out.size() != samples.size()) throw InvalidArgument("process_bundle: output span size differs from input");
  const std::size_t dims = tree.params().dims;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].features.size() != dims) {
      throw DataError("process_bundle: sample " + std::to_string(i) + " has " +
                      std::to_string(samples[i].features.size()) + " features, tree expects " + std::to_string(dims));
    }
  }
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto& s = samples[i];
    out[i] = s.train ? tree.train(s.features, s.label) : tree.infer(s.features);
  }
}

template <std::floating_point Real>
std::vector<Label> process_bundle(HoeffdingTree<Real>& tree, std::span<const BasicSample<Real>> samples) {
  std::vector<Label> out(samples.size());
  process_bundle(tree, samples, std::span<Label>(out));
  return out;
}

inline std::vector<Label> process_bundle(Tree& tree, const Bundle& bundle) {
  return process_bundle(tree, std::span<const Sample>(bundle.samples));
}

}  // namespace ht
