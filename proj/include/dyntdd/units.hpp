// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>

namespace dyntdd {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Non-positive linear values map to -inf dB.
inline double linear_to_db(double lin) {
  return lin > 0.0 ? 10.0 * std::log10(lin) : kNegInf;
}

// Thermal noise over a bandwidth, in dBm.
inline double noise_power_dbm(double density_dbm_per_hz, double bandwidth_hz) {
  return density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz);
}

struct Point {
  double x{0.0};
  double y{0.0};

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace dyntdd
