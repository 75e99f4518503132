#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hoeffding/bound.hpp"
#include "hoeffding/error.hpp"
#include "hoeffding/gain.hpp"
#include "hoeffding/params.hpp"
#include "hoeffding/quantile_sketch.hpp"

namespace ht {

/// Sufficient statistics of one leaf: per-class counts and one quantile
/// sketch per (class, attribute) pair, stored row-major by class.
template <std::floating_point Real = float>
struct LeafStats {
  std::vector<std::uint64_t> class_counts;
  std::vector<QuantileSketch<Real>> sketches;
  std::uint32_t dims = 0;
  std::uint32_t since_last_attempt = 0;
  bool frozen = false;

  LeafStats() = default;

  explicit LeafStats(const Hyperparams& params)
      : class_counts(params.classes, 0),
        sketches(static_cast<std::size_t>(params.classes) * params.dims,
                 QuantileSketch<Real>(params.n_quantiles, static_cast<Real>(params.lambda))),
        dims(params.dims) {}

  QuantileSketch<Real>& sketch(std::size_t label, std::size_t attr) { return sketches[label * dims + attr]; }
  const QuantileSketch<Real>& sketch(std::size_t label, std::size_t attr) const {
    return sketches[label * dims + attr];
  }

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (auto c : class_counts) n += c;
    return n;
  }

  std::size_t observed_classes() const {
    return static_cast<std::size_t>(std::count_if(class_counts.begin(), class_counts.end(),
                                                  [](std::uint64_t c) { return c > 0; }));
  }

  /// Majority class; ties go to the lowest index and an empty leaf predicts 0.
  Label majority() const {
    Label best = 0;
    for (std::size_t k = 1; k < class_counts.size(); ++k) {
      if (class_counts[k] > class_counts[best]) best = static_cast<Label>(k);
    }
    return best;
  }

  friend bool operator==(const LeafStats&, const LeafStats&) = default;
};

enum class NodeKind : std::uint8_t { empty = 0, leaf = 1, internal = 2 };

template <std::floating_point Real = float>
struct Node {
  NodeKind kind = NodeKind::empty;
  std::uint32_t split_attr = 0;
  Real split_value = 0;
  NodeIndex left = 0;
  NodeIndex right = 0;
  LeafStats<Real> stats;  // empty unless kind == leaf

  bool is_leaf() const { return kind == NodeKind::leaf; }

  friend bool operator==(const Node&, const Node&) = default;
};

template <std::floating_point Real = float>
struct Split {
  std::uint32_t attr = 0;
  Real value = 0;
  double gain = 0.0;
};

/// Information gain of splitting a leaf on `attr` at `v`. The left-going
/// mass of class k is estimated as n_k * cdf_k(v) from its sketch.
template <std::floating_point Real>
double split_gain(const LeafStats<Real>& stats, std::size_t attr, Real v) {
  if (attr >= stats.dims) throw InvalidArgument("split_gain: attribute index out of range");
  const std::size_t k = stats.class_counts.size();
  std::vector<double> fraction(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    if (stats.class_counts[c] > 0) fraction[c] = stats.sketch(c, attr).cdf_estimate(v);
  }
  return split_gain_from_fractions(stats.class_counts, fraction);
}

/// Candidate thresholds for `attr`: the per-class sketches are pooled into
/// a class-weighted mixture CDF, which is inverted at n_pt evenly spaced
/// probabilities j / (n_pt + 1). Duplicates are removed; the result is
/// sorted ascending.
template <std::floating_point Real>
std::vector<Real> candidate_thresholds(const LeafStats<Real>& stats, std::size_t attr, std::size_t n_pt) {
  const std::size_t k = stats.class_counts.size();
  const double total = static_cast<double>(stats.total());
  std::vector<Real> knots;
  if (!(total > 0.0) || n_pt == 0) return knots;
  for (std::size_t c = 0; c < k; ++c) {
    if (stats.class_counts[c] == 0) continue;
    const auto e = stats.sketch(c, attr).estimates();
    knots.insert(knots.end(), e.begin(), e.end());
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> mixture(knots.size(), 0.0);
  for (std::size_t m = 0; m < knots.size(); ++m) {
    double f = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      if (stats.class_counts[c] == 0) continue;
      f += static_cast<double>(stats.class_counts[c]) * stats.sketch(c, attr).cdf_estimate(knots[m]);
    }
    mixture[m] = f / total;
  }

  std::vector<Real> out;
  out.reserve(n_pt);
  for (std::size_t j = 1; j <= n_pt; ++j) {
    const double p = static_cast<double>(j) / static_cast<double>(n_pt + 1);
    const auto it = std::lower_bound(mixture.begin(), mixture.end(), p);
    Real v;
    if (it == mixture.end()) {
      v = knots.back();
    } else if (it == mixture.begin()) {
      v = knots.front();
    } else {
      const std::size_t m = static_cast<std::size_t>(it - mixture.begin());
      const double f0 = mixture[m - 1];
      const double f1 = mixture[m];
      const double t = f1 > f0 ? (p - f0) / (f1 - f0) : 1.0;
      const double lo = knots[m - 1];
      const double hi = knots[m];
      v = static_cast<Real>(lo + t * (hi - lo));
    }
    out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Highest-gain candidate threshold for one attribute. Ties keep the lowest
/// threshold.
template <std::floating_point Real>
Split<Real> best_split_for_attribute(const LeafStats<Real>& stats, std::uint32_t attr, std::size_t n_pt) {
  Split<Real> best{attr, Real{0}, 0.0};
  bool first = true;
  for (Real v : candidate_thresholds(stats, attr, n_pt)) {
    const double g = split_gain(stats, attr, v);
    if (first || g > best.gain) {
      best.value = v;
      best.gain = g;
      first = false;
    }
  }
  return best;
}

/// Incremental Hoeffding tree over a fixed-capacity node arena.
///
/// Leaves keep per-class counts and quantile sketches instead of samples.
/// Every n_min training samples a leaf evaluates n_pt candidate thresholds
/// per attribute and splits on the best attribute X once its information
/// gain beats the runner-up Y by more than the Hoeffding bound (range
/// log2(K)), or once the bound itself drops below tau. When the arena has
/// no room for two more nodes the leaf is frozen: it keeps learning class
/// counts but never splits.
template <std::floating_point Real = float>
class HoeffdingTree {
 public:
  using value_type = Real;
  using node_type = Node<Real>;
  using sample_type = BasicSample<Real>;

  explicit HoeffdingTree(const Hyperparams& params) : params_(params) {
    params_.validate();
    nodes_.reserve(params_.max_nodes);
    nodes_.push_back(make_leaf());
  }

  const Hyperparams& params() const { return params_; }
  NodeIndex root() const { return root_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t capacity() const { return params_.max_nodes; }
  const node_type& node(NodeIndex i) const { return nodes_.at(i); }
  std::span<const node_type> nodes() const { return nodes_; }

  NodeIndex sort_to_leaf(std::span<const Real> features) const {
    check_features(features);
    NodeIndex i = root_;
    while (nodes_[i].kind == NodeKind::internal) {
      const node_type& n = nodes_[i];
      i = features[n.split_attr] <= n.split_value ? n.left : n.right;
    }
    return i;
  }

  Label infer(std::span<const Real> features) const { return nodes_[sort_to_leaf(features)].stats.majority(); }

  /// Infer-then-train: returns the prediction of the model as it was before
  /// this sample, then absorbs the sample.
  Label train(std::span<const Real> features, Label label) {
    if (label >= params_.classes) {
      throw InvalidArgument("train: label " + std::to_string(label) + " out of range for " +
                            std::to_string(params_.classes) + " classes");
    }
    const NodeIndex leaf = sort_to_leaf(features);
    LeafStats<Real>& stats = nodes_[leaf].stats;
    const Label prediction = stats.majority();

    stats.class_counts[label] += 1;
    for (std::uint32_t d = 0; d < params_.dims; ++d) stats.sketch(label, d).update(features[d]);
    stats.since_last_attempt += 1;
    if (stats.since_last_attempt >= params_.n_min && !stats.frozen) {
      stats.since_last_attempt = 0;
      attempt_split(leaf);
    }
    return prediction;
  }

  Label train(const sample_type& sample) {
    if (!sample.train) throw InvalidArgument("train: sample is flagged for inference only");
    return train(sample.features, sample.label);
  }

  /// Evaluates the split rule at `leaf` and applies it. Returns the split
  /// taken, or nothing when the leaf stays a leaf (including when it is
  /// frozen for lack of arena space).
  std::optional<Split<Real>> attempt_split(NodeIndex leaf) {
    if (leaf >= nodes_.size() || !nodes_[leaf].is_leaf()) return std::nullopt;
    LeafStats<Real>& stats = nodes_[leaf].stats;
    if (stats.frozen) return std::nullopt;
    const std::uint64_t n = stats.total();
    if (n == 0 || stats.observed_classes() < 2) return std::nullopt;
    if (nodes_.size() + 2 > params_.max_nodes) {
      stats.frozen = true;
      return std::nullopt;
    }

    std::vector<Split<Real>> per_attr;
    per_attr.reserve(params_.dims);
    std::size_t x = 0;
    for (std::uint32_t d = 0; d < params_.dims; ++d) {
      per_attr.push_back(best_split_for_attribute(stats, d, params_.n_pt));
      if (per_attr[d].gain > per_attr[x].gain) x = d;
    }
    const Split<Real> best = per_attr[x];
    double runner_up = 0.0;  // a single attribute competes against the null split
    for (std::size_t d = 0; d < per_attr.size(); ++d) {
      if (d != x) runner_up = std::max(runner_up, per_attr[d].gain);
    }

    const double range = std::log2(static_cast<double>(params_.classes));
    const double epsilon = hoeffding_bound(range, params_.delta, n);
    const bool separated = best.gain - runner_up > epsilon;
    const bool tie = epsilon < params_.tau;
    if (!(best.gain > 0.0) || !(separated || tie)) return std::nullopt;

    const auto left = static_cast<NodeIndex>(nodes_.size());
    const auto right = static_cast<NodeIndex>(left + 1);
    nodes_.push_back(make_leaf());
    nodes_.push_back(make_leaf());
    node_type& parent = nodes_[leaf];
    parent.kind = NodeKind::internal;
    parent.split_attr = best.attr;
    parent.split_value = best.value;
    parent.left = left;
    parent.right = right;
    parent.stats = LeafStats<Real>{};
    return best;
  }

  /// Counts of (internal, leaf) nodes reachable from the root.
  std::pair<std::size_t, std::size_t> shape() const {
    std::size_t internal = 0, leaves = 0;
    std::vector<NodeIndex> stack{root_};
    while (!stack.empty()) {
      const node_type& n = nodes_[stack.back()];
      stack.pop_back();
      if (n.kind == NodeKind::internal) {
        ++internal;
        stack.push_back(n.left);
        stack.push_back(n.right);
      } else {
        ++leaves;
      }
    }
    return {internal, leaves};
  }

  friend bool operator==(const HoeffdingTree&, const HoeffdingTree&) = default;

  /// Rebuilds a tree from raw parts, validating structure. Used by the
  /// deserializer; the arena must describe a strict binary tree rooted at
  /// `root` that uses every slot exactly once.
  static HoeffdingTree from_parts(const Hyperparams& params, std::vector<node_type> nodes, NodeIndex root) {
    HoeffdingTree tree(params);
    if (nodes.empty() || nodes.size() > params.max_nodes) throw FormatError("node count outside [1, max_nodes]");
    if (root >= nodes.size()) throw FormatError("root index out of range");
    std::vector<bool> seen(nodes.size(), false);
    std::vector<NodeIndex> stack{root};
    std::size_t visited = 0;
    while (!stack.empty()) {
      const NodeIndex i = stack.back();
      stack.pop_back();
      if (seen[i]) throw FormatError("node " + std::to_string(i) + " is reachable twice");
      seen[i] = true;
      ++visited;
      const node_type& n = nodes[i];
      if (n.kind == NodeKind::internal) {
        if (n.left >= nodes.size() || n.right >= nodes.size()) {
          throw FormatError("node " + std::to_string(i) + " has a child outside the arena");
        }
        if (n.split_attr >= params.dims) throw FormatError("split attribute out of range");
        if (!std::isfinite(n.split_value)) throw FormatError("split value is not finite");
        stack.push_back(n.left);
        stack.push_back(n.right);
      } else if (n.kind == NodeKind::leaf) {
        if (n.stats.class_counts.size() != params.classes ||
            n.stats.sketches.size() != static_cast<std::size_t>(params.classes) * params.dims) {
          throw FormatError("leaf statistics do not match the hyperparameters");
        }
      } else {
        throw FormatError("node " + std::to_string(i) + " has an invalid kind");
      }
    }
    if (visited != nodes.size()) throw FormatError("arena contains unreachable nodes");
    nodes.reserve(params.max_nodes);
    tree.nodes_ = std::move(nodes);
    tree.root_ = root;
    return tree;
  }

 private:
  node_type make_leaf() const {
    node_type n;
    n.kind = NodeKind::leaf;
    n.stats = LeafStats<Real>(params_);
    return n;
  }

  void check_features(std::span<const Real> features) const {
    if (features.size() != params_.dims) {
      throw DataError("expected " + std::to_string(params_.dims) + " features, got " +
                      std::to_string(features.size()));
    }
    for (Real f : features) {
      if (!std::isfinite(f)) throw InvalidArgument("feature value is not finite");
    }
  }

  Hyperparams params_;
  std::vector<node_type> nodes_;
  NodeIndex root_ = 0;
};

using Tree = HoeffdingTree<float>;

}  // namespace ht
