// SPDX-License-Identifier: Apache-2.0
//
// Subframe-stepped simulation of a dynamic-TDD pico network.
//
// Every reconfiguration period each cell picks its TDD configuration from its
// queue contents, interferers exchange configuration ids and (proposed scheme
// only) each cell derives its per-flexible-subframe UL power offsets. Every
// subframe each cell schedules one UE in the subframe's direction, SINRs are
// evaluated over the whole snapshot and the served bits drain the FIFO queues.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntdd/channel.hpp"
#include "dyntdd/frame.hpp"
#include "dyntdd/mac.hpp"
#include "dyntdd/metrics.hpp"
#include "dyntdd/phy.hpp"
#include "dyntdd/powerctl.hpp"
#include "dyntdd/topology.hpp"
#include "dyntdd/traffic.hpp"

namespace dyntdd {

enum class Scheme : std::uint8_t { Baseline, Proposed };

inline const char* to_string(Scheme s) { return s == Scheme::Baseline ? "baseline" : "proposed"; }

inline Scheme parse_scheme(const std::string& name) {
  if (name == "baseline") return Scheme::Baseline;
  if (name == "proposed") return Scheme::Proposed;
  throw std::invalid_argument("unknown scheme '" + name + "'");
}

struct SimConfig {
  LayoutParams layout;
  PathlossModel pathloss;
  AntennaGains antennas;
  double lambda_dl{1.0};
  std::int64_t packet_bits{kDefaultPacketBits};
  PowerControlParams power;
  Scheme scheme{Scheme::Proposed};
  double enb_power_dbm{24.0};
  LinkBudgetParams link;
  ReconfigPolicy mac;
  int initial_config{1};
  // Per-pico fixed configuration, -1 for adaptive. Empty: all adaptive.
  std::vector<int> config_override;
  std::int64_t duration_ms{60000};
  std::int64_t warmup_ms{1000};
  std::uint64_t seed{1};

  void validate() const {
    TrafficParams(lambda_dl, packet_bits);
    power.validate();
    link.validate();
    mac.validate();
    if (duration_ms <= 0) throw std::invalid_argument("duration must be positive");
    if (warmup_ms < 0 || warmup_ms >= duration_ms)
      throw std::invalid_argument("warm-up must lie in [0, duration)");
    if (initial_config < 0 || initial_config >= kNumConfigs)
      throw std::invalid_argument("initial configuration out of range");
    for (int c : config_override)
      if (c < -1 || c >= kNumConfigs) throw std::invalid_argument("configuration override out of range");
    if (!std::isfinite(enb_power_dbm)) throw std::invalid_argument("eNB power must be finite");
  }
};

struct DirectionMetrics {
  ThroughputSummary throughput;
  std::size_t arrived{0};
  std::size_t completed{0};

  double completion_ratio() const {
    return arrived == 0 ? 1.0 : static_cast<double>(completed) / static_cast<double>(arrived);
  }
};

struct RunMetrics {
  DirectionMetrics dl;
  DirectionMetrics ul;
  std::vector<double> cell_mean_delta_db;  // NaN for cells without UL grants
  double mean_delta_db{0.0};

  const DirectionMetrics& of(Dir d) const { return d == Dir::DL ? dl : ul; }
};

// One cell's grant in one subframe.
struct GrantRecord {
  std::int64_t t_ms;
  int cell;
  int config;
  Dir dir;
  int ue;
  double power_dbm;
  double open_loop_dbm;  // UL only; NaN for DL
  double delta_db;       // offset table value in force for this subframe
  double sinr_db;
  std::int64_t bits;
};

struct PeriodRecord {
  std::int64_t period;
  int cell;
  int config;
  const IndicatorState* indicators;
};

struct RunObservers {
  std::function<void(const PeriodRecord&)> on_period;
  std::function<void(const GrantRecord&)> on_grant;
};

class Simulation {
 public:
  explicit Simulation(SimConfig config) : cfg_(std::move(config)) {
    cfg_.validate();
    layout_ = generate_layout(cfg_.layout, cfg_.seed);
    coupling_ = build_coupling_matrix(layout_, cfg_.pathloss, cfg_.antennas);
    const int picos = layout_.num_picos();
    if (!cfg_.config_override.empty() && static_cast<int>(cfg_.config_override.size()) != picos)
      throw std::invalid_argument("configuration override needs one entry per pico");
    enb_powers_.assign(picos, cfg_.enb_power_dbm);
    interferers_ = select_all_interferers(coupling_, picos, cfg_.power);
    serving_pl_.resize(layout_.num_ues());
    serving_gain_db_.resize(layout_.num_ues());
    for (int u = 0; u < layout_.num_ues(); ++u) {
      const int enb = layout_.serving[u];
      const int ue = layout_.flat_index({NodeKind::Ue, u});
      serving_pl_[u] = coupling_.pathloss_db(enb, ue);
      serving_gain_db_[u] = coupling_.gain_db(enb, ue);
    }
    const TrafficParams traffic(cfg_.lambda_dl, cfg_.packet_bits);
    arrivals_.resize(picos);
    for (int c = 0; c < picos; ++c)
      arrivals_[c] = generate_arrivals(traffic, c, layout_.cell_ues[c], cfg_.duration_ms, cfg_.seed);
  }

  const SimConfig& config() const { return cfg_; }
  const NetworkLayout& layout() const { return layout_; }
  const CouplingMatrix& coupling() const { return coupling_; }
  const std::vector<InterfererSet>& interferers() const { return interferers_; }
  const std::vector<std::vector<PacketRecord>>& arrivals() const { return arrivals_; }

  RunMetrics run(const RunObservers& obs = {}) const {
    const int picos = layout_.num_picos();
    const int num_ues = layout_.num_ues();
    const double noise_db = linear_to_db(cfg_.link.noise_mw());

    std::vector<std::array<UeQueue, 2>> queues(num_ues);
    std::vector<std::size_t> next_arrival(picos, 0);
    std::vector<int> configs(picos, cfg_.initial_config);
    std::vector<IndicatorState> indicators(picos);
    PfState pf(num_ues);

    std::array<std::vector<double>, 2> samples;
    std::array<std::size_t, 2> arrived{0, 0};
    std::vector<double> delta_sum(picos, 0.0);
    std::vector<std::size_t> ul_grants(picos, 0);

    SubframeSnapshot snap;
    snap.cells.resize(picos);
    std::vector<Dir> cell_dir(picos);
    std::vector<int> chosen(picos, -1);
    std::vector<double> chosen_delta(picos, 0.0);
    std::vector<double> chosen_open_loop(picos, 0.0);
    std::vector<std::vector<ScheduleCandidate>> cell_cands(picos);

    for (std::int64_t t = 0; t < cfg_.duration_ms; ++t) {
      for (int c = 0; c < picos; ++c) {
        auto& list = arrivals_[c];
        while (next_arrival[c] < list.size() && list[next_arrival[c]].arrival_ms <= t) {
          const PacketRecord& p = list[next_arrival[c]++];
          if (p.arrival_ms >= cfg_.warmup_ms) ++arrived[static_cast<int>(p.direction)];
          queues[p.ue][static_cast<int>(p.direction)].push(p);
        }
      }

      if (t % cfg_.mac.period_ms == 0) {
        for (int c = 0; c < picos; ++c) {
          const int fixed = cfg_.config_override.empty() ? -1 : cfg_.config_override[c];
          if (fixed >= 0) {
            configs[c] = fixed;
            continue;
          }
          std::int64_t dl = 0, ul = 0;
          for (int u : layout_.cell_ues[c]) {
            dl += queues[u][0].backlog_bits();
            ul += queues[u][1].backlog_bits();
          }
          configs[c] = select_configuration(dl, ul, configs[c]);
        }
        if (cfg_.scheme == Scheme::Proposed) {
          const NeighborConfigState neighbor = exchange_configs(configs, interferers_);
          for (int c = 0; c < picos; ++c)
            indicators[c] =
                compute_indicator_state(c, interferers_[c], neighbor[c], coupling_, enb_powers_, cfg_.power);
        }
        if (obs.on_period)
          for (int c = 0; c < picos; ++c)
            obs.on_period({t / cfg_.mac.period_ms, c, configs[c], &indicators[c]});
      }

      const int sf = static_cast<int>(t % kSubframesPerFrame);
      const SubframeClass cls = classify_subframe(sf);
      snap.subframe = sf;

      for (int c = 0; c < picos; ++c) {
        const Dir dir = is_downlink(subframe_direction(configs[c], sf)) ? Dir::DL : Dir::UL;
        const int d = static_cast<int>(dir);
        cell_dir[c] = dir;
        const double delta = dir == Dir::UL ? indicators[c].delta_for(sf) : 0.0;
        auto& cc = cell_cands[c];
        cc.clear();
        for (int u : layout_.cell_ues[c]) {
          if (queues[u][d].empty()) continue;
          const double p = dir == Dir::DL ? enb_powers_[c] : ul_transmit_power(serving_pl_[u], cls, delta, cfg_.power);
          cc.push_back({u, capacity_bps(p + serving_gain_db_[u] - noise_db, cfg_.link)});
        }
        const auto pick = schedule(cc, dir, pf, cfg_.mac.pf_epsilon_bps);
        CellActivity& act = snap.cells[c];
        act = CellActivity{};
        act.downlink = dir == Dir::DL;
        chosen[c] = pick.value_or(-1);
        chosen_delta[c] = delta;
        if (!pick) continue;
        const int ue_flat = layout_.flat_index({NodeKind::Ue, *pick});
        if (dir == Dir::DL) {
          act.transmitter = c;
          act.receiver = ue_flat;
          act.power_dbm = enb_powers_[c];
        } else {
          act.transmitter = ue_flat;
          act.receiver = c;
          act.power_dbm = ul_transmit_power(serving_pl_[*pick], cls, delta, cfg_.power);
          chosen_open_loop[c] = open_loop_power_dbm(serving_pl_[*pick], cfg_.power);
        }
      }

      for (int c = 0; c < picos; ++c) {
        const Dir dir = cell_dir[c];
        const int d = static_cast<int>(dir);
        double served_bps = 0.0;
        if (chosen[c] >= 0) {
          const double sinr = dir == Dir::DL ? dl_sinr_db(c, snap, coupling_, cfg_.link)
                                             : ul_sinr_db(c, snap, coupling_, cfg_.link);
          const auto bits = static_cast<std::int64_t>(std::floor(capacity_bps(sinr, cfg_.link) / 1000.0));
          ServeReport rep = queues[chosen[c]][d].serve(bits, t + 1);
          served_bps = static_cast<double>(rep.served_bits) * 1000.0;
          for (const PacketRecord& p : rep.completed) {
            if (p.arrival_ms < cfg_.warmup_ms) continue;
            const double sojourn_s = static_cast<double>(*p.completion_ms - p.arrival_ms) / 1000.0;
            samples[d].push_back(static_cast<double>(p.size_bits) / sojourn_s);
          }
          if (dir == Dir::UL && t >= cfg_.warmup_ms) {
            delta_sum[c] += snap.cells[c].power_dbm - chosen_open_loop[c];
            ++ul_grants[c];
          }
          if (obs.on_grant)
            obs.on_grant({t, c, configs[c], dir, chosen[c], snap.cells[c].power_dbm,
                          dir == Dir::UL ? chosen_open_loop[c] : NAN, chosen_delta[c], sinr, bits});
        }
        const auto cand_opt = chosen[c] >= 0 ? std::optional<int>(chosen[c]) : std::nullopt;
        update_pf(pf, dir, cand_opt, served_bps, cell_cands[c], cfg_.mac.pf_window);
      }
    }

    RunMetrics m;
    for (Dir dir : {Dir::DL, Dir::UL}) {
      const int d = static_cast<int>(dir);
      DirectionMetrics& dm = dir == Dir::DL ? m.dl : m.ul;
      dm.throughput = collect_metrics(samples[d]);
      dm.arrived = arrived[d];
      dm.completed = samples[d].size();
    }
    double total = 0.0;
    int cells_with_ul = 0;
    for (int c = 0; c < picos; ++c) {
      if (ul_grants[c] == 0) {
        m.cell_mean_delta_db.push_back(NAN);
        continue;
      }
      const double mean = delta_sum[c] / static_cast<double>(ul_grants[c]);
      m.cell_mean_delta_db.push_back(mean);
      total += mean;
      ++cells_with_ul;
    }
    m.mean_delta_db = cells_with_ul > 0 ? total / cells_with_ul : 0.0;
    return m;
  }

 private:
  SimConfig cfg_;
  NetworkLayout layout_;
  CouplingMatrix coupling_;
  std::vector<double> enb_powers_;
  std::vector<InterfererSet> interferers_;
  std::vector<double> serving_pl_;
  std::vector<double> serving_gain_db_;
  std::vector<std::vector<PacketRecord>> arrivals_;
};

inline RunMetrics run(const SimConfig& config, const RunObservers& obs = {}) {
  return Simulation(config).run(obs);
}

// CSV trace writers for the observers above.
inline RunObservers make_trace_observers(std::ostream* delta_trace, std::ostream* sinr_trace) {
  RunObservers obs;
  if (delta_trace) {
    *delta_trace << "period,cell,config,subframe,indicator,indicator_max,delta_db\n";
    obs.on_period = [delta_trace](const PeriodRecord& r) {
      for (std::size_t i = 0; i < kFlexibleSubframes.size(); ++i)
        *delta_trace << r.period << ',' << r.cell << ',' << r.config << ',' << kFlexibleSubframes[i] << ','
                     << r.indicators->indicator[i] << ',' << r.indicators->indicator_max << ','
                     << r.indicators->delta_db[i] << '\n';
    };
  }
  if (sinr_trace) {
    *sinr_trace << "t_ms,cell,dir,ue,power_dbm,sinr_db,bits\n";
    obs.on_grant = [sinr_trace](const GrantRecord& g) {
      *sinr_trace << g.t_ms << ',' << g.cell << ',' << to_string(g.dir) << ',' << g.ue << ',' << g.power_dbm
                  << ',' << g.sinr_db << ',' << g.bits << '\n';
    };
  }
  return obs;
}

}  // namespace dyntdd
