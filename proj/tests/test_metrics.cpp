// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <numeric>

#include "dyntdd/metrics.hpp"

using namespace dyntdd;

TEST(Metrics, MeanAndPercentile) {
  const auto s = collect_metrics({10.0, 20.0, 30.0});
  EXPECT_EQ(s.count, 3u);
  EXPECT_DOUBLE_EQ(*s.mean_bps, 20.0);
  EXPECT_DOUBLE_EQ(*s.p5_bps, 11.0);
}

TEST(Metrics, EqualSamples) {
  const auto s = collect_metrics(std::vector<double>(100, 4.5e6));
  EXPECT_DOUBLE_EQ(*s.mean_bps, 4.5e6);
  EXPECT_DOUBLE_EQ(*s.p5_bps, 4.5e6);
}

TEST(Metrics, PercentileInterpolates) {
  std::vector<double> v(100);
  std::iota(v.begin(), v.end(), 1.0);
  std::reverse(v.begin(), v.end());
  EXPECT_NEAR(*percentile(v, 0.05), 5.95, 1e-12);
  EXPECT_DOUBLE_EQ(*percentile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(*percentile(v, 1.0), 100.0);
  EXPECT_DOUBLE_EQ(*percentile({42.0}, 0.05), 42.0);
  EXPECT_THROW(percentile(v, 1.5), std::invalid_argument);
}

TEST(Metrics, EmptyHasNoValue) {
  const auto s = collect_metrics({});
  EXPECT_EQ(s.count, 0u);
  EXPECT_FALSE(s.mean_bps);
  EXPECT_FALSE(s.p5_bps);
  EXPECT_FALSE(percentile({}, 0.05));
}

TEST(Metrics, PercentileBounded) {
  std::vector<double> v{3.0, 1.0, 8.0, 2.0, 9.5, 4.0};
  for (double q = 0.0; q <= 1.0; q += 0.05) {
    const double p = *percentile(v, q);
    EXPECT_GE(p, 1.0);
    EXPECT_LE(p, 9.5);
  }
}
