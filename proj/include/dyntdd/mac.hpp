// SPDX-License-Identifier: Apache-2.0
//
// Per-cell TDD reconfiguration and proportional-fair user selection.
#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dyntdd/frame.hpp"
#include "dyntdd/traffic.hpp"

namespace dyntdd {

struct ReconfigPolicy {
  int period_ms{10};
  int pf_window{100};
  double pf_epsilon_bps{1.0};

  void validate() const {
    if (period_ms < 1) throw std::invalid_argument("reconfiguration period must be >= 1 ms");
    if (pf_window < 1) throw std::invalid_argument("PF window must be >= 1 subframe");
    if (!(pf_epsilon_bps > 0.0)) throw std::invalid_argument("PF epsilon must be positive");
  }
};

// Downlink share of each configuration in tenths (Special counted as DL).
inline std::array<int, kNumConfigs> downlink_tenths() {
  std::array<int, kNumConfigs> out{};
  for (int c = 0; c < kNumConfigs; ++c) out[c] = downlink_subframe_count(c);
  return out;
}

inline double downlink_fraction(int config_id) { return downlink_subframe_count(config_id) / 10.0; }

// Picks the configuration whose DL share is closest to the queued DL share
// dl/(dl+ul); ties go to the lower id. Compared in integers so ties are exact.
inline int select_configuration(std::int64_t dl_queued_bits, std::int64_t ul_queued_bits, int current_config) {
  if (dl_queued_bits < 0 || ul_queued_bits < 0) throw std::invalid_argument("queued bits must be >= 0");
  const std::int64_t total = dl_queued_bits + ul_queued_bits;
  if (total == 0) return current_config;
  const auto tenths = downlink_tenths();
  int best = 0;
  std::int64_t best_err = -1;
  for (int c = 0; c < kNumConfigs; ++c) {
    // |rho - n/10| * 10 * total
    const std::int64_t err = std::llabs(10 * dl_queued_bits - tenths[c] * total);
    if (best_err < 0 || err < best_err) {
      best = c;
      best_err = err;
    }
  }
  return best;
}

// Exponentially averaged served rate per UE and direction.
class PfState {
 public:
  explicit PfState(int num_ues = 0) : avg_(static_cast<std::size_t>(num_ues), {0.0, 0.0}) {}

  double average(int ue, Dir dir) const { return avg_.at(ue)[static_cast<int>(dir)]; }
  double& average(int ue, Dir dir) { return avg_.at(ue)[static_cast<int>(dir)]; }
  std::size_t size() const { return avg_.size(); }

 private:
  std::vector<std::array<double, 2>> avg_;
};

struct ScheduleCandidate {
  int ue;
  double achievable_bps;
};

// PF choice among backlogged UEs: argmax achievable / max(R_avg, eps).
// The earliest candidate wins ties.
inline std::optional<int> schedule(const std::vector<ScheduleCandidate>& backlogged, Dir dir,
                                   const PfState& pf, double epsilon_bps) {
  std::optional<int> best;
  double best_metric = -1.0;
  for (const auto& cand : backlogged) {
    const double metric = cand.achievable_bps / std::max(pf.average(cand.ue, dir), epsilon_bps);
    if (!best || metric > best_metric) {
      best = cand.ue;
      best_metric = metric;
    }
  }
  return best;
}

// Served UE moves towards served_bps; other backlogged UEs decay.
inline void update_pf(PfState& pf, Dir dir, std::optional<int> served_ue, double served_bps,
                      const std::vector<ScheduleCandidate>& backlogged, int window) {
  if (window < 1) throw std::invalid_argument("PF window must be >= 1");
  const double keep = 1.0 - 1.0 / window;
  const int served = served_ue.value_or(-1);
  for (const auto& cand : backlogged) {
    double& r = pf.average(cand.ue, dir);
    r = keep * r;
    if (cand.ue == served) r += served_bps / window;
  }
}

}  // namespace dyntdd
