// SPDX-License-Identifier: Apache-2.0
//
// Experiment files, sweeps over arrival rate x scheme x seed, and the result
// CSV.
//
// Experiment files are plain `key = value` lines; `#` starts a comment. Lists
// are comma separated. Every key is optional. See configs/default.conf for the
// full list with defaults.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "dyntdd/engine.hpp"

namespace dyntdd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentSpec {
  SimConfig base;
  std::vector<double> lambda_dl{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  std::vector<std::uint64_t> seeds{1};
  std::vector<Scheme> schemes{Scheme::Baseline, Scheme::Proposed};
  std::string output_dir{"out"};
  int threads{0};  // 0: hardware concurrency

  void validate() const {
    if (lambda_dl.empty()) throw ConfigError("lambda_dl sweep is empty");
    if (seeds.empty()) throw ConfigError("seed list is empty");
    if (schemes.empty()) throw ConfigError("scheme list is empty");
    for (double l : lambda_dl)
      if (!(l >= 0.0) || !std::isfinite(l)) throw ConfigError("lambda_dl values must be finite and >= 0");
    try {
      base.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
};

namespace detail {

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

inline double parse_number(const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + v + "'");
  }
  if (used != v.size()) throw std::invalid_argument("not a number: '" + v + "'");
  return x;
}

// "1/3" or "0.3333"
inline double parse_fraction(const std::string& v) {
  const auto slash = v.find('/');
  if (slash == std::string::npos) return parse_number(v);
  const double num = parse_number(trim(v.substr(0, slash)));
  const double den = parse_number(trim(v.substr(slash + 1)));
  if (den == 0.0) throw std::invalid_argument("zero denominator in '" + v + "'");
  return num / den;
}

inline std::int64_t parse_int(const std::string& v) {
  std::size_t used = 0;
  long long x = 0;
  try {
    x = std::stoll(v, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer: '" + v + "'");
  }
  if (used != v.size()) throw std::invalid_argument("not an integer: '" + v + "'");
  return x;
}

inline bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("not a boolean: '" + v + "'");
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

using Setter = std::function<void(ExperimentSpec&, const std::string&)>;

inline const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto positive_int = [](const std::string& v, const char* name) {
      const auto x = parse_int(v);
      require(x >= 1, std::string(name) + " must be >= 1");
      return static_cast<int>(x);
    };
    t["n_sites"] = [=](ExperimentSpec& s, const std::string& v) { s.base.layout.n_sites = positive_int(v, "n_sites"); };
    t["picos_per_sector"] = [=](ExperimentSpec& s, const std::string& v) {
      s.base.layout.picos_per_sector = positive_int(v, "picos_per_sector");
    };
    t["ues_per_pico"] = [=](ExperimentSpec& s, const std::string& v) {
      s.base.layout.ues_per_pico = positive_int(v, "ues_per_pico");
    };
    t["isd_m"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.layout.isd_m = parse_number(v);
      require(s.base.layout.isd_m > 0, "isd_m must be positive");
    };
    t["pico_radius_m"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.layout.pico_radius_m = parse_number(v);
      require(s.base.layout.pico_radius_m > 0, "pico_radius_m must be positive");
    };
    t["lambda_dl"] = [](ExperimentSpec& s, const std::string& v) {
      s.lambda_dl.clear();
      for (const auto& item : split_list(v)) {
        const double l = parse_number(item);
        require(l >= 0.0 && std::isfinite(l), "lambda_dl values must be >= 0");
        s.lambda_dl.push_back(l);
      }
      require(!s.lambda_dl.empty(), "lambda_dl list is empty");
    };
    t["seeds"] = [](ExperimentSpec& s, const std::string& v) {
      s.seeds.clear();
      for (const auto& item : split_list(v)) {
        const auto x = parse_int(item);
        require(x >= 0, "seeds must be non-negative");
        s.seeds.push_back(static_cast<std::uint64_t>(x));
      }
      require(!s.seeds.empty(), "seed list is empty");
    };
    t["schemes"] = [](ExperimentSpec& s, const std::string& v) {
      s.schemes.clear();
      for (const auto& item : split_list(v)) s.schemes.push_back(parse_scheme(item));
      require(!s.schemes.empty(), "scheme list is empty");
    };
    t["duration_ms"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.duration_ms = parse_int(v);
      require(s.base.duration_ms > 0, "duration_ms must be positive");
    };
    t["warmup_ms"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.warmup_ms = parse_int(v);
      require(s.base.warmup_ms >= 0, "warmup_ms must be >= 0");
    };
    t["packet_bits"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.packet_bits = parse_int(v);
      require(s.base.packet_bits > 0, "packet_bits must be positive");
    };
    t["p0_dbm"] = [](ExperimentSpec& s, const std::string& v) { s.base.power.p0_dbm = parse_number(v); };
    t["alpha"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.power.alpha = parse_number(v);
      require(s.base.power.alpha >= 0.0 && s.base.power.alpha <= 1.0, "alpha must lie in [0, 1]");
    };
    t["p_threshold_db"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.power.p_threshold_db = parse_number(v);
    };
    t["ue_pmax_dbm"] = [](ExperimentSpec& s, const std::string& v) { s.base.power.ue_pmax_dbm = parse_number(v); };
    t["enb_power_dbm"] = [](ExperimentSpec& s, const std::string& v) { s.base.enb_power_dbm = parse_number(v); };
    t["delta_table"] = [](ExperimentSpec& s, const std::string& v) {
      std::vector<DeltaRow> rows;
      for (const auto& item : split_list(v)) {
        const auto colon = item.find(':');
        require(colon != std::string::npos, "delta_table entries are fraction:delta_db");
        rows.push_back({parse_fraction(trim(item.substr(0, colon))), parse_number(trim(item.substr(colon + 1)))});
      }
      PowerControlParams probe = s.base.power;
      probe.delta_table = rows;
      probe.validate();
      s.base.power.delta_table = rows;
    };
    t["indicator_include_gains"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.power.indicator_include_gains = parse_bool(v);
    };
    t["system_bandwidth_hz"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.power.system_bandwidth_hz = parse_number(v);
      require(s.base.power.system_bandwidth_hz > 0, "system_bandwidth_hz must be positive");
    };
    t["noise_density_dbm_hz"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.link.noise_density_dbm_hz = parse_number(v);
      s.base.power.noise_density_dbm_hz = s.base.link.noise_density_dbm_hz;
    };
    t["bandwidth_hz"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.link.bandwidth_hz = parse_number(v);
      require(s.base.link.bandwidth_hz > 0, "bandwidth_hz must be positive");
    };
    t["se_cap"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.link.se_cap_bps_hz = parse_number(v);
      require(s.base.link.se_cap_bps_hz > 0, "se_cap must be positive");
    };
    t["ul_ul_interference"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.link.ul_ul_interference = parse_bool(v);
    };
    t["period_ms"] = [=](ExperimentSpec& s, const std::string& v) { s.base.mac.period_ms = positive_int(v, "period_ms"); };
    t["pf_window"] = [=](ExperimentSpec& s, const std::string& v) { s.base.mac.pf_window = positive_int(v, "pf_window"); };
    t["pf_epsilon_bps"] = [](ExperimentSpec& s, const std::string& v) {
      s.base.mac.pf_epsilon_bps = parse_number(v);
      require(s.base.mac.pf_epsilon_bps > 0, "pf_epsilon_bps must be positive");
    };
    t["initial_config"] = [](ExperimentSpec& s, const std::string& v) {
      const auto c = parse_int(v);
      require(c >= 0 && c < kNumConfigs, "initial_config must lie in 0..6");
      s.base.initial_config = static_cast<int>(c);
    };
    t["enb_enb_model"] = [](ExperimentSpec& s, const std::string& v) {
      if (v == "los")
        s.base.pathloss.enb_enb = PathlossModel::los_enb_enb().enb_enb;
      else if (v == "nlos")
        s.base.pathloss.enb_enb = PathlossModel{}.enb_enb;
      else
        throw std::invalid_argument("enb_enb_model must be 'los' or 'nlos'");
    };
    t["output_dir"] = [](ExperimentSpec& s, const std::string& v) { s.output_dir = v; };
    t["threads"] = [](ExperimentSpec& s, const std::string& v) {
      const auto n = parse_int(v);
      require(n >= 0, "threads must be >= 0");
      s.threads = static_cast<int>(n);
    };
    return t;
  }();
  return table;
}

}  // namespace detail

inline ExperimentSpec parse_experiment(std::istream& in, const std::string& source = "<input>") {
  ExperimentSpec spec;
  std::string line;
  int lineno = 0;
  const auto& setters = detail::setters();
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError(where + "unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + "missing value for '" + key + "'");
    try {
      it->second(spec, value);
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(where + key + ": " + e.what());
    }
  }
  spec.validate();
  return spec;
}

inline ExperimentSpec parse_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open experiment file " + path.string());
  return parse_experiment(in, path.string());
}

struct ResultRow {
  double lambda_ul;
  Scheme scheme;
  std::uint64_t seed;
  Dir direction;
  std::optional<double> avg_tput_mbps;
  std::optional<double> p5_tput_mbps;
  double completion_ratio;
  double mean_delta_db;
};

inline constexpr const char* kCsvHeader =
    "lambda_ul,scheme,seed,direction,avg_tput_mbps,p5_tput_mbps,completion_ratio,mean_delta_db";

inline std::vector<ResultRow> result_rows(const RunMetrics& m, double lambda_dl, Scheme scheme, std::uint64_t seed) {
  std::vector<ResultRow> rows;
  for (Dir d : {Dir::DL, Dir::UL}) {
    const DirectionMetrics& dm = m.of(d);
    auto mbps = [](std::optional<double> v) { return v ? std::optional<double>(*v / 1e6) : std::nullopt; };
    rows.push_back({lambda_dl / 2.0, scheme, seed, d, mbps(dm.throughput.mean_bps), mbps(dm.throughput.p5_bps),
                    dm.completion_ratio(), m.mean_delta_db});
  }
  return rows;
}

namespace detail {

inline std::string fmt(double v, const char* f) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

inline std::string fmt_opt(std::optional<double> v) { return v ? fmt(*v, "%.6f") : std::string("NA"); }

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kCsvHeader << '\n';
  for (const auto& r : rows) {
    os << detail::fmt(r.lambda_ul, "%.6g") << ',' << to_string(r.scheme) << ',' << r.seed << ','
       << to_string(r.direction) << ',' << detail::fmt_opt(r.avg_tput_mbps) << ','
       << detail::fmt_opt(r.p5_tput_mbps) << ',' << detail::fmt(r.completion_ratio, "%.6f") << ','
       << detail::fmt(r.mean_delta_db, "%.6f") << '\n';
  }
}

// Runs every (lambda, scheme, seed) on a bounded worker pool. Rows come back in
// (lambda, scheme, seed, direction) order regardless of completion order.
inline std::vector<ResultRow> run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  struct Job {
    double lambda_dl;
    Scheme scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (double l : spec.lambda_dl)
    for (Scheme s : spec.schemes)
      for (std::uint64_t seed : spec.seeds) jobs.push_back({l, s, seed});

  std::vector<std::vector<ResultRow>> slots(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        SimConfig cfg = spec.base;
        cfg.lambda_dl = jobs[i].lambda_dl;
        cfg.scheme = jobs[i].scheme;
        cfg.seed = jobs[i].seed;
        slots[i] = result_rows(run(cfg), jobs[i].lambda_dl, jobs[i].scheme, jobs[i].seed);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : std::thread::hardware_concurrency();
  n = std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<ResultRow> rows;
  for (auto& s : slots) rows.insert(rows.end(), s.begin(), s.end());
  return rows;
}

// Sweep and write `csv_path`. The file appears only once complete; on failure
// nothing is left behind.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, const std::filesystem::path& csv_path) {
  const auto tmp = std::filesystem::path(csv_path.string() + ".partial");
  try {
    const auto rows = run_sweep(spec);
    if (csv_path.has_parent_path()) std::filesystem::create_directories(csv_path.parent_path());
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
      write_csv(out, rows);
      if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, csv_path);
    return rows;
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
}

}  // namespace dyntdd
