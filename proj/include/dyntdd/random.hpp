// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dyntdd {

// Independent random streams derived from one run seed. Each consumer draws
// from its own stream so that, for example, the power-control scheme can never
// shift the traffic that a given seed produces.
enum class Stream : std::uint32_t {
  Layout = 1,
  DlArrivals = 2,
  UlArrivals = 3,
  UeAssignment = 4,
};

class Rng {
 public:
  Rng(std::uint64_t seed, Stream stream, std::uint32_t substream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), substream};
    engine_.seed(seq);
  }

  // Uniform on [0, 1), 53 random bits. Does not depend on the standard
  // library's distribution implementations.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  std::uint64_t index(std::uint64_t n) {
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n;
  }

  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dyntdd
