// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace dyntdd {

// Percentile by linear interpolation between order statistics, 1-based rank
// q*(n-1)+1. Empty input has no percentile.
inline std::optional<double> percentile(std::vector<double> values, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile must lie in [0, 1]");
  if (values.empty()) return std::nullopt;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

struct ThroughputSummary {
  std::size_t count{0};
  std::optional<double> mean_bps;  // nullopt: no samples
  std::optional<double> p5_bps;
};

// Per-packet throughput samples (bits / sojourn seconds) to mean and 5th
// percentile.
inline ThroughputSummary collect_metrics(const std::vector<double>& samples_bps) {
  ThroughputSummary s;
  s.count = samples_bps.size();
  if (samples_bps.empty()) return s;
  double sum = 0.0;
  for (double v : samples_bps) sum += v;
  s.mean_bps = sum / static_cast<double>(samples_bps.size());
  s.p5_bps = percentile(samples_bps, 0.05);
  return s;
}

}  // namespace dyntdd
