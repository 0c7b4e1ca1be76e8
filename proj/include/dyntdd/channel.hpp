// SPDX-License-Identifier: Apache-2.0
//
// Large-scale link model. Pathloss is deterministic (no shadowing, no fading)
// and reciprocal; antenna gains are added per endpoint kind.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "dyntdd/topology.hpp"
#include "dyntdd/units.hpp"

namespace dyntdd {

enum class LinkType : std::uint8_t { EnbToUe, UeToEnb, EnbToEnb, UeToUe };

inline LinkType link_type(NodeKind tx, NodeKind rx) {
  if (tx == NodeKind::PicoEnb) return rx == NodeKind::PicoEnb ? LinkType::EnbToEnb : LinkType::EnbToUe;
  return rx == NodeKind::PicoEnb ? LinkType::UeToEnb : LinkType::UeToUe;
}

// PL = intercept + slope * log10(d_km) up to the breakpoint, then the far
// segment. A breakpoint of +inf gives a single-slope model.
struct DualSlope {
  double intercept_db{0.0};
  double slope_db{0.0};
  double breakpoint_km{INFINITY};
  double far_intercept_db{0.0};
  double far_slope_db{0.0};
  double min_distance_m{1.0};
};

// Distances in km inside the formulas. eNB<->UE is the pico-UE law; eNB<->eNB
// is the NLOS pico-pico law; UE<->UE switches from LOS to NLOS at 50 m.
struct PathlossModel {
  DualSlope enb_ue{140.7, 36.7, INFINITY, 0.0, 0.0, 10.0};
  DualSlope enb_enb{169.36, 40.0, INFINITY, 0.0, 0.0, 40.0};
  DualSlope ue_ue{98.45, 20.0, 0.05, 175.78, 40.0, 3.0};
  double carrier_mhz{2000.0};

  const DualSlope& segment(LinkType link) const {
    switch (link) {
      case LinkType::EnbToUe:
      case LinkType::UeToEnb: return enb_ue;
      case LinkType::EnbToEnb: return enb_enb;
      case LinkType::UeToUe: return ue_ue;
    }
    return enb_ue;
  }

  // eNB<->eNB always in line of sight: 98.45 + 20 log10(d) up to 2/3 km.
  static PathlossModel los_enb_enb() {
    PathlossModel m;
    m.enb_enb = {98.45, 20.0, 2.0 / 3.0, 175.78, 40.0, 40.0};
    return m;
  }
};

struct AntennaGains {
  double enb_dbi{5.0};
  double ue_dbi{0.0};

  double of(NodeKind kind) const { return kind == NodeKind::PicoEnb ? enb_dbi : ue_dbi; }
};

inline double free_space_pathloss_db(double d_m, double carrier_mhz) {
  return 20.0 * std::log10(d_m) + 20.0 * std::log10(carrier_mhz) - 27.55;
}

inline double pathloss_db(const PathlossModel& model, LinkType link, double d_m) {
  if (!(d_m > 0.0)) throw std::invalid_argument("pathloss distance must be positive");
  const DualSlope& seg = model.segment(link);
  const double d_km = d_m / 1000.0;
  const double pl = d_km <= seg.breakpoint_km
                        ? seg.intercept_db + seg.slope_db * std::log10(d_km)
                        : seg.far_intercept_db + seg.far_slope_db * std::log10(d_km);
  return std::max(pl, free_space_pathloss_db(seg.min_distance_m, model.carrier_mhz));
}

inline double coupling_gain_db(double pathloss, NodeKind tx, NodeKind rx, const AntennaGains& gains) {
  return -pathloss + gains.of(tx) + gains.of(rx);
}

// Dense all-pairs pathloss and gain tables, built once per run. Node order
// follows NetworkLayout::flat_index. Diagonal entries are +inf pathloss,
// i.e. zero linear gain.
class CouplingMatrix {
 public:
  CouplingMatrix() = default;

  CouplingMatrix(const NetworkLayout& layout, const PathlossModel& model, const AntennaGains& gains)
      : n_(static_cast<std::size_t>(layout.num_nodes())),
        num_picos_(layout.num_picos()),
        gains_(gains),
        pathloss_(n_ * n_, INFINITY),
        gain_lin_(n_ * n_, 0.0) {
    for (std::size_t a = 0; a < n_; ++a) {
      const NodeId ia = layout.node_at(static_cast<int>(a));
      for (std::size_t b = a + 1; b < n_; ++b) {
        const NodeId ib = layout.node_at(static_cast<int>(b));
        const double pl = dyntdd::pathloss_db(model, link_type(ia.kind, ib.kind),
                                      distance(layout.position(ia), layout.position(ib)));
        pathloss_[a * n_ + b] = pl;
        pathloss_[b * n_ + a] = pl;
        const double g = db_to_linear(coupling_gain_db(pl, ia.kind, ib.kind, gains));
        gain_lin_[a * n_ + b] = g;
        gain_lin_[b * n_ + a] = g;
      }
    }
  }

  std::size_t size() const { return n_; }

  double pathloss_db(int a, int b) const { return pathloss_[idx(a, b)]; }

  double gain_db(int tx, int rx) const {
    if (tx == rx) return kNegInf;
    return coupling_gain_db(pathloss_db(tx, rx), kind(tx), kind(rx), gains_);
  }

  double gain_linear(int tx, int rx) const { return gain_lin_[idx(tx, rx)]; }

  NodeKind kind(int flat) const { return flat < num_picos_ ? NodeKind::PicoEnb : NodeKind::Ue; }

  const AntennaGains& antenna_gains() const { return gains_; }

 private:
  std::size_t idx(int a, int b) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
  }

  std::size_t n_{0};
  int num_picos_{0};
  AntennaGains gains_;
  std::vector<double> pathloss_;
  std::vector<double> gain_lin_;
};

inline CouplingMatrix build_coupling_matrix(const NetworkLayout& layout, const PathlossModel& model,
                                            const AntennaGains& gains = {}) {
  return CouplingMatrix(layout, model, gains);
}

}  // namespace dyntdd
