#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hoeffding/bound.hpp"
#include "hoeffding/gain.hpp"
#include "hoeffding/tree.hpp"
#include "oracles.hpp"

namespace {

TEST(HoeffdingBound, ZeroRangeGivesZero) { EXPECT_EQ(ht::hoeffding_bound(0.0, 0.001, 200), 0.0); }

TEST(HoeffdingBound, DefaultParameterValue) {
  // sqrt(ln(1000) / 400)
  EXPECT_NEAR(ht::hoeffding_bound(1.0, 0.001, 200), 0.1314130442, 1e-9);
}

TEST(HoeffdingBound, QuadruplingSamplesHalvesBound) {
  const double d = std::exp(-1.0);
  EXPECT_NEAR(ht::hoeffding_bound(1.0, d, 50), 0.1, 1e-12);
  EXPECT_NEAR(ht::hoeffding_bound(1.0, d, 200), 0.05, 1e-12);
}

TEST(HoeffdingBound, RejectsOutOfDomainArguments) {
  EXPECT_THROW(ht::hoeffding_bound(1.0, 0.001, 0), ht::InvalidArgument);
  EXPECT_THROW(ht::hoeffding_bound(1.0, 0.0, 10), ht::InvalidArgument);
  EXPECT_THROW(ht::hoeffding_bound(1.0, 1.0, 10), ht::InvalidArgument);
  EXPECT_THROW(ht::hoeffding_bound(-1.0, 0.5, 10), ht::InvalidArgument);
}

TEST(HoeffdingBound, MonotoneInSamplesRangeAndConfidence) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> r(0.01, 10.0);
  std::uniform_real_distribution<double> dl(1e-6, 0.9);
  std::uniform_int_distribution<std::uint64_t> n(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    const double range = r(rng), delta = dl(rng);
    const std::uint64_t count = n(rng);
    const double e = ht::hoeffding_bound(range, delta, count);
    EXPECT_GE(e, 0.0);
    EXPECT_GT(e, ht::hoeffding_bound(range, delta, count + 1));
    EXPECT_LT(e, ht::hoeffding_bound(range * 1.01, delta, count));
    EXPECT_LT(e, ht::hoeffding_bound(range, delta * 0.99, count));
  }
}

TEST(Entropy, KnownDistributions) {
  EXPECT_DOUBLE_EQ(ht::entropy_bits(std::vector<double>{1, 1}), 1.0);
  EXPECT_DOUBLE_EQ(ht::entropy_bits(std::vector<double>{5, 0}), 0.0);
  EXPECT_DOUBLE_EQ(ht::entropy_bits(std::vector<double>{0, 0}), 0.0);
  EXPECT_NEAR(ht::entropy_bits(std::vector<double>{1, 1, 1, 1}), 2.0, 1e-15);
}

TEST(SplitGain, PerfectSeparationOfBalancedPairIsOneBit) {
  const std::vector<std::uint64_t> counts{100, 100};
  EXPECT_DOUBLE_EQ(ht::split_gain_from_fractions(counts, std::vector<double>{1.0, 0.0}), 1.0);
}

TEST(SplitGain, ChildrenMirroringParentGainNothing) {
  const std::vector<std::uint64_t> counts{50, 50};
  EXPECT_DOUBLE_EQ(ht::split_gain_from_fractions(counts, std::vector<double>{0.5, 0.5}), 0.0);
}

TEST(SplitGain, EmptySideGainsNothing) {
  const std::vector<std::uint64_t> counts{30, 70};
  EXPECT_EQ(ht::split_gain_from_fractions(counts, std::vector<double>{0.0, 0.0}), 0.0);
  EXPECT_EQ(ht::split_gain_from_fractions(counts, std::vector<double>{1.0, 1.0}), 0.0);
}

TEST(SplitGain, MatchesMassOracleAndStaysWithinLog2K) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> k_dist(2, 12);
  std::uniform_int_distribution<std::uint64_t> c_dist(0, 500);
  std::uniform_real_distribution<double> f_dist(0.0, 1.0);
  for (int trial = 0; trial < 3000; ++trial) {
    const int k = k_dist(rng);
    std::vector<std::uint64_t> counts(k);
    std::vector<double> frac(k), left(k), right(k);
    for (int c = 0; c < k; ++c) {
      counts[c] = c_dist(rng);
      frac[c] = trial % 7 == 0 ? std::round(f_dist(rng)) : f_dist(rng);
      left[c] = counts[c] * frac[c];
      right[c] = counts[c] - left[c];
    }
    const double g = ht::split_gain_from_fractions(counts, frac);
    EXPECT_GE(g, 0.0);
    EXPECT_LE(g, std::log2(static_cast<double>(k)) + 1e-12);
    EXPECT_NEAR(g, std::max(0.0, ht::oracle::gain_from_masses(left, right)), 1e-9);
  }
}

TEST(SplitGain, LeafStatsBelowSupportGivesZero) {
  ht::Hyperparams p;
  p.dims = 2;
  p.classes = 3;
  ht::LeafStats<float> stats(p);
  std::mt19937_64 rng(2);
  std::normal_distribution<float> g(0.0f, 1.0f);
  for (int i = 0; i < 600; ++i) {
    const auto label = static_cast<ht::Label>(i % 3);
    stats.class_counts[label]++;
    for (std::size_t d = 0; d < 2; ++d) stats.sketch(label, d).update(g(rng) + static_cast<float>(label));
  }
  EXPECT_NEAR(ht::split_gain(stats, 0, -1000.0f), 0.0, 1e-12);
  EXPECT_NEAR(ht::split_gain(stats, 1, 1000.0f), 0.0, 1e-12);
}

TEST(SplitGain, LeafStatsWithSeparatedClassesUsesClampedCdf) {
  // Two classes far apart on attribute 0. Each class CDF read in the gap
  // clamps to 16/17 and 1/17 respectively.
  ht::Hyperparams p;
  p.dims = 1;
  p.classes = 2;
  ht::LeafStats<float> stats(p);
  for (int i = 0; i < 100; ++i) {
    stats.class_counts[0]++;
    stats.sketch(0, 0).update(0.0f);
    stats.class_counts[1]++;
    stats.sketch(1, 0).update(10.0f);
  }
  const double a = 16.0 / 17.0, b = 1.0 / 17.0;
  const double expect = ht::oracle::gain_from_masses({100 * a, 100 * b}, {100 * (1 - a), 100 * (1 - b)});
  EXPECT_NEAR(ht::split_gain(stats, 0, 5.0f), expect, 1e-12);
  EXPECT_NEAR(expect, 0.6772430411, 1e-9);
}

}  // namespace
