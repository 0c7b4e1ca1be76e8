// SPDX-License-Identifier: Apache-2.0
//
// Interference-aware UL power control for flexible subframes.
//
// Each victim pico keeps the set of neighbour picos whose pathloss towards it
// is within a threshold. Neighbours report their TDD configuration every
// period; from the reported directions the victim computes, per flexible
// subframe, an interference level
//
//   I(s) = log2( sum_k bit_k(s) * P_k * PL_k / N )
//
// with N the thermal noise over the system bandwidth, and compares it against
// fractions of I_max (all neighbours downlink) to pick a power offset that its
// UEs add on top of open-loop power in that subframe.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntdd/channel.hpp"
#include "dyntdd/frame.hpp"
#include "dyntdd/units.hpp"

namespace dyntdd {

struct DeltaRow {
  double fraction;  // of I_max, upper (closed) end of the region
  double delta_db;
};

struct PowerControlParams {
  double p0_dbm{-76.0};
  double alpha{0.8};
  double p_threshold_db{130.0};
  double ue_pmax_dbm{23.0};
  std::vector<DeltaRow> delta_table{{1.0 / 3.0, 0.0}, {1.0 / 2.0, 1.0}, {2.0 / 3.0, 3.0}, {1.0, 5.0}};
  // Reference noise for the indicator: density over the full channel.
  double noise_density_dbm_hz{-174.0};
  double system_bandwidth_hz{10e6};
  // Multiply each term by G_i * G_k (the indicator normally uses power and
  // pathloss only).
  bool indicator_include_gains{false};

  void validate() const {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
    if (!std::isfinite(p0_dbm) || !std::isfinite(ue_pmax_dbm) || !std::isfinite(p_threshold_db))
      throw std::invalid_argument("power-control levels must be finite");
    if (!(system_bandwidth_hz > 0.0)) throw std::invalid_argument("system bandwidth must be positive");
    if (delta_table.empty()) throw std::invalid_argument("delta table is empty");
    for (std::size_t i = 0; i < delta_table.size(); ++i) {
      const DeltaRow& row = delta_table[i];
      if (!(row.fraction > 0.0) || !std::isfinite(row.delta_db) || row.delta_db < 0.0)
        throw std::invalid_argument("delta table rows need fraction > 0 and delta >= 0");
      if (i > 0 && !(row.fraction > delta_table[i - 1].fraction))
        throw std::invalid_argument("delta table fractions must be strictly increasing");
      if (i > 0 && row.delta_db < delta_table[i - 1].delta_db)
        throw std::invalid_argument("delta table offsets must be non-decreasing");
    }
    if (delta_table.back().fraction != 1.0)
      throw std::invalid_argument("delta table must end at fraction 1");
  }

  double reference_noise_mw() const {
    return db_to_linear(noise_power_dbm(noise_density_dbm_hz, system_bandwidth_hz));
  }

  // Same thresholds with every offset zero: plain open-loop control.
  PowerControlParams baseline() const {
    PowerControlParams p = *this;
    for (auto& row : p.delta_table) row.delta_db = 0.0;
    return p;
  }
};

// Picos indexed 0..num_picos-1 (their flat index in the coupling matrix).
using InterfererSet = std::vector<int>;

inline InterfererSet select_interferers(int victim, const CouplingMatrix& coupling, int num_picos,
                                        const PowerControlParams& params) {
  InterfererSet set;
  for (int k = 0; k < num_picos; ++k)
    if (k != victim && coupling.pathloss_db(victim, k) <= params.p_threshold_db) set.push_back(k);
  return set;
}

inline std::vector<InterfererSet> select_all_interferers(const CouplingMatrix& coupling, int num_picos,
                                                         const PowerControlParams& params) {
  std::vector<InterfererSet> sets;
  sets.reserve(num_picos);
  for (int i = 0; i < num_picos; ++i) sets.push_back(select_interferers(i, coupling, num_picos, params));
  return sets;
}

// victim -> (interferer -> 5-bit flexible-subframe bitmap)
using NeighborConfigState = std::vector<std::map<int, std::string>>;

// Every interferer sends its 3-bit configuration id; the victim expands it to
// the flexible-subframe bitmap on receipt.
inline NeighborConfigState exchange_configs(const std::vector<int>& configs,
                                            const std::vector<InterfererSet>& interferers) {
  NeighborConfigState state(interferers.size());
  for (std::size_t victim = 0; victim < interferers.size(); ++victim) {
    for (int k : interferers[victim]) {
      const std::string wire = encode_config_id(configs.at(k));
      state[victim][k] = decode_config_id(wire);
    }
  }
  return state;
}

namespace detail {

inline double indicator_term(int victim, int k, const CouplingMatrix& coupling,
                             const std::vector<double>& enb_powers_dbm, const PowerControlParams& params) {
  double db = enb_powers_dbm.at(k) - coupling.pathloss_db(victim, k);
  if (params.indicator_include_gains) db += 2.0 * coupling.antenna_gains().enb_dbi;
  return db_to_linear(db);
}

inline double indicator_from_sum(double sum_mw, const PowerControlParams& params) {
  return sum_mw > 0.0 ? std::log2(sum_mw / params.reference_noise_mw()) : kNegInf;
}

}  // namespace detail

inline double interference_indicator(int victim, int subframe, const std::map<int, std::string>& bitmaps,
                                     const CouplingMatrix& coupling,
                                     const std::vector<double>& enb_powers_dbm,
                                     const PowerControlParams& params) {
  if (classify_subframe(subframe) != SubframeClass::FLS)
    throw std::invalid_argument("interference indicator is defined for flexible subframes only");
  double sum = 0.0;
  for (const auto& [k, bitmap] : bitmaps)
    if (bitmap_bit(bitmap, subframe)) sum += detail::indicator_term(victim, k, coupling, enb_powers_dbm, params);
  return detail::indicator_from_sum(sum, params);
}

inline double indicator_max(int victim, const InterfererSet& interferers, const CouplingMatrix& coupling,
                            const std::vector<double>& enb_powers_dbm, const PowerControlParams& params) {
  double sum = 0.0;
  for (int k : interferers) sum += detail::indicator_term(victim, k, coupling, enb_powers_dbm, params);
  return detail::indicator_from_sum(sum, params);
}

// Region lookup with right-closed intervals. Indicator values below zero
// (interference under the noise floor) are clamped to zero. A non-positive
// I_max means the neighbourhood can never rise above noise; no offset then.
inline double delta_lookup(double indicator, double indicator_max, const std::vector<DeltaRow>& table) {
  if (table.empty()) return 0.0;
  if (std::isnan(indicator) || indicator == kNegInf) return 0.0;
  if (!(indicator_max > 0.0) || !std::isfinite(indicator_max)) return 0.0;
  const double level = std::max(indicator, 0.0);
  const double slack = 1e-12 * indicator_max;
  for (const DeltaRow& row : table)
    if (level <= row.fraction * indicator_max + slack) return row.delta_db;
  return table.back().delta_db;
}

inline double open_loop_power_dbm(double serving_pl_db, const PowerControlParams& params) {
  return std::min(params.ue_pmax_dbm, params.p0_dbm + params.alpha * serving_pl_db);
}

// UE transmit power. The offset applies in flexible subframes only and the
// maximum-power cap applies after it.
inline double ul_transmit_power(double serving_pl_db, SubframeClass cls, double delta_db,
                                const PowerControlParams& params) {
  const double boost = cls == SubframeClass::FLS ? delta_db : 0.0;
  return std::min(params.ue_pmax_dbm, params.p0_dbm + params.alpha * serving_pl_db + boost);
}

// Per-victim view for one period, indexed by position in kFlexibleSubframes.
struct IndicatorState {
  std::array<double, 5> indicator{kNegInf, kNegInf, kNegInf, kNegInf, kNegInf};
  double indicator_max{kNegInf};
  std::array<double, 5> delta_db{};

  double delta_for(int subframe) const {
    const int idx = flexible_index(subframe);
    return idx < 0 ? 0.0 : delta_db[idx];
  }
};

inline IndicatorState compute_indicator_state(int victim, const InterfererSet& interferers,
                                              const std::map<int, std::string>& bitmaps,
                                              const CouplingMatrix& coupling,
                                              const std::vector<double>& enb_powers_dbm,
                                              const PowerControlParams& params) {
  IndicatorState st;
  st.indicator_max = indicator_max(victim, interferers, coupling, enb_powers_dbm, params);
  for (std::size_t i = 0; i < kFlexibleSubframes.size(); ++i) {
    st.indicator[i] =
        interference_indicator(victim, kFlexibleSubframes[i], bitmaps, coupling, enb_powers_dbm, params);
    st.delta_db[i] = delta_lookup(st.indicator[i], st.indicator_max, params.delta_table);
  }
  return st;
}

}  // namespace dyntdd
