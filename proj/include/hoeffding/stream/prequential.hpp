#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hoeffding/error.hpp"
#include "hoeffding/serialize.hpp"
#include "hoeffding/tree.hpp"

namespace ht {

struct WindowAccuracy {
  std::uint64_t end = 0;  ///< one past the last sample index in the window
  double accuracy = 0.0;

  friend bool operator==(const WindowAccuracy&, const WindowAccuracy&) = default;
};

struct PrequentialReport {
  std::uint64_t total = 0;
  std::uint64_t correct = 0;
  double accuracy = 0.0;
  std::chrono::nanoseconds train_time{0};
  std::chrono::nanoseconds infer_time{0};
  std::uint64_t final_node_count = 0;
  std::uint64_t model_bytes = 0;
  std::vector<WindowAccuracy> windowed_accuracy;

  friend bool operator==(const PrequentialReport&, const PrequentialReport&) = default;
};

/// Test-then-train evaluation: every sample is first predicted by the
/// current model, scored, then absorbed. Windows are consecutive and
/// non-overlapping; a trailing partial window is reported too.
///
/// train_time covers the infer-then-train loop. infer_time is a second,
/// inference-only pass of the same stream through the final model.
/// Neither includes I/O.
template <std::floating_point Real>
PrequentialReport run_prequential(HoeffdingTree<Real>& tree, std::span<const BasicSample<Real>> stream,
                                  std::size_t window = 1000) {
  if (stream.empty()) throw DataError("prequential run needs a non-empty stream");
  if (window == 0) throw InvalidArgument("window size must be positive");
  for (const auto& s : stream) {
    if (!s.train) throw InvalidArgument("prequential streams must be flagged for training");
    if (s.features.size() != tree.params().dims) throw DataError("stream dimensionality differs from the tree");
  }

  PrequentialReport r;
  std::uint64_t window_correct = 0;
  std::uint64_t window_size = 0;
  using clock = std::chrono::steady_clock;

  const auto t0 = clock::now();
  for (const auto& s : stream) {
    const Label predicted = tree.train(s.features, s.label);
    const bool hit = predicted == s.label;
    r.correct += hit;
    window_correct += hit;
    ++r.total;
    if (++window_size == window) {
      r.windowed_accuracy.push_back({r.total, static_cast<double>(window_correct) / static_cast<double>(window)});
      window_correct = 0;
      window_size = 0;
    }
  }
  r.train_time = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t0);
  if (window_size > 0) {
    r.windowed_accuracy.push_back({r.total, static_cast<double>(window_correct) / static_cast<double>(window_size)});
  }

  std::uint64_t sink = 0;
  const auto t1 = clock::now();
  for (const auto& s : stream) sink += tree.infer(s.features);
  r.infer_time = std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() - t1);
  static_cast<void>(sink);

  r.accuracy = static_cast<double>(r.correct) / static_cast<double>(r.total);
  r.final_node_count = tree.node_count();
  r.model_bytes = ht::model_bytes(tree.params());
  return r;
}

}  // namespace ht
