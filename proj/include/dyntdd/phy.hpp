// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyntdd/channel.hpp"
#include "dyntdd/units.hpp"

namespace dyntdd {

class PhyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct LinkBudgetParams {
  double noise_density_dbm_hz{-174.0};
  double bandwidth_hz{9e6};  // 50 RBs of 180 kHz
  double se_cap_bps_hz{4.8};
  // Co-channel UE->eNB interference from neighbour cells' UL grants.
  bool ul_ul_interference{true};

  double noise_mw() const { return db_to_linear(noise_power_dbm(noise_density_dbm_hz, bandwidth_hz)); }

  void validate() const {
    if (!(bandwidth_hz > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(se_cap_bps_hz > 0.0)) throw std::invalid_argument("spectral-efficiency cap must be positive");
  }
};

// What one cell does in a subframe. A cell with nothing to send is silent.
struct CellActivity {
  bool downlink{true};
  int transmitter{-1};  // flat node index, -1 when silent
  int receiver{-1};
  double power_dbm{kNegInf};

  bool active() const { return transmitter >= 0; }
};

struct SubframeSnapshot {
  int subframe{0};
  std::vector<CellActivity> cells;  // indexed by pico
};

namespace detail {

inline double sinr_at(int victim_cell, const SubframeSnapshot& snap, const CouplingMatrix& coupling,
                      const LinkBudgetParams& params) {
  const CellActivity& own = snap.cells.at(victim_cell);
  const int rx = own.receiver;
  const double signal = db_to_linear(own.power_dbm) * coupling.gain_linear(own.transmitter, rx);
  double interference = 0.0;
  for (std::size_t c = 0; c < snap.cells.size(); ++c) {
    const CellActivity& other = snap.cells[c];
    if (static_cast<int>(c) == victim_cell || !other.active()) continue;
    // UL victim hearing another cell's UL UE
    if (!own.downlink && !other.downlink && !params.ul_ul_interference) continue;
    interference += db_to_linear(other.power_dbm) * coupling.gain_linear(other.transmitter, rx);
  }
  return linear_to_db(signal / (interference + params.noise_mw()));
}

}  // namespace detail

// SINR at the victim pico's receiver for its scheduled UL UE. eNB->eNB terms
// come from every other cell transmitting downlink; UE->eNB terms from every
// other cell's scheduled UL UE.
inline double ul_sinr_db(int victim_cell, const SubframeSnapshot& snap, const CouplingMatrix& coupling,
                         const LinkBudgetParams& params) {
  const CellActivity& own = snap.cells.at(victim_cell);
  if (own.downlink || !own.active()) throw PhyError("UL SINR requested for a cell without an UL grant");
  return detail::sinr_at(victim_cell, snap, coupling, params);
}

// SINR at the scheduled DL UE of the victim cell: eNB->UE from other DL cells
// and UE->UE from other cells' UL UEs.
inline double dl_sinr_db(int victim_cell, const SubframeSnapshot& snap, const CouplingMatrix& coupling,
                         const LinkBudgetParams& params) {
  const CellActivity& own = snap.cells.at(victim_cell);
  if (!own.downlink || !own.active()) throw PhyError("DL SINR requested for a cell without a DL grant");
  return detail::sinr_at(victim_cell, snap, coupling, params);
}

inline double capacity_bps(double sinr_db, const LinkBudgetParams& params) {
  if (std::isnan(sinr_db) || sinr_db == kNegInf) return 0.0;
  const double se = std::log2(1.0 + db_to_linear(sinr_db));
  return params.bandwidth_hz * std::min(se, params.se_cap_bps_hz);
}

}  // namespace dyntdd
