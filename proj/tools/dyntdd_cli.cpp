// SPDX-License-Identifier: Apache-2.0
//
// dyntdd run   -- one simulation, metrics to <out>/run.csv
// dyntdd sweep -- lambda x scheme x seed sweep to <out>/results.csv
// dyntdd plot  -- result CSV to SVG charts

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "dyntdd/dyntdd.hpp"

namespace fs = std::filesystem;
using namespace dyntdd;

namespace {

ExperimentSpec load_spec(const std::string& config_path) {
  if (config_path.empty()) {
    std::istringstream empty;
    return parse_experiment(empty, "<defaults>");
  }
  return parse_experiment(fs::path(config_path));
}

void print_summary(const std::vector<ResultRow>& rows) {
  for (const auto& r : rows) {
    std::cout << "lambda_ul=" << r.lambda_ul << " " << to_string(r.scheme) << " seed=" << r.seed << " "
              << to_string(r.direction) << " avg=" << detail::fmt_opt(r.avg_tput_mbps)
              << " Mbps p5=" << detail::fmt_opt(r.p5_tput_mbps) << " Mbps completion="
              << detail::fmt(r.completion_ratio, "%.3f") << " mean_delta=" << detail::fmt(r.mean_delta_db, "%.3f")
              << " dB\n";
  }
}

int cmd_run(const std::string& config, std::optional<std::uint64_t> seed, std::optional<double> lambda_dl,
            std::optional<std::string> scheme, std::optional<std::string> out, int trace) {
  ExperimentSpec spec = load_spec(config);
  SimConfig cfg = spec.base;
  cfg.seed = seed.value_or(spec.seeds.front());
  cfg.lambda_dl = lambda_dl.value_or(spec.lambda_dl.front());
  cfg.scheme = scheme ? parse_scheme(*scheme) : spec.schemes.back();
  const fs::path dir = out.value_or(spec.output_dir);
  fs::create_directories(dir);

  Simulation sim(cfg);
  std::ofstream delta_trace, sinr_trace;
  if (trace >= 1) {
    std::ofstream layout(dir / "layout.txt");
    dump_layout(sim.layout(), layout);
    delta_trace.open(dir / "delta_trace.csv");
  }
  if (trace >= 2) sinr_trace.open(dir / "sinr_trace.csv");
  const auto obs = make_trace_observers(trace >= 1 ? &delta_trace : nullptr, trace >= 2 ? &sinr_trace : nullptr);
  const auto rows = result_rows(sim.run(obs), cfg.lambda_dl, cfg.scheme, cfg.seed);
  std::ofstream csv(dir / "run.csv", std::ios::binary);
  write_csv(csv, rows);
  print_summary(rows);
  return 0;
}

int cmd_sweep(const std::string& config, std::optional<std::uint64_t> seed, std::optional<std::string> out,
              std::optional<int> threads) {
  ExperimentSpec spec = load_spec(config);
  if (seed) spec.seeds = {*seed};
  if (threads) spec.threads = *threads;
  const fs::path dir = out.value_or(spec.output_dir);
  const auto rows = run_experiment(spec, dir / "results.csv");
  std::cout << "wrote " << rows.size() << " rows to " << (dir / "results.csv").string() << "\n";
  return 0;
}

int cmd_plot(const std::string& csv, const std::string& out) {
  for (const auto& p : emit_plots(csv, out)) std::cout << "wrote " << p.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamic-TDD pico network simulator with interference-aware UL power control"};
  app.require_subcommand(1);

  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  int trace = 0;
  std::optional<double> lambda_dl;
  std::optional<std::string> scheme;
  std::optional<int> threads;
  std::string csv;
  std::string plot_out = ".";

  auto* run = app.add_subcommand("run", "Run a single simulation");
  run->add_option("--config", config, "Experiment file")->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Seed (default: first seed of the experiment)");
  run->add_option("--lambda-dl", lambda_dl, "DL arrival rate per cell (default: first of the sweep)");
  run->add_option("--scheme", scheme, "baseline or proposed (default: last listed scheme)");
  run->add_option("--out", out, "Output directory");
  run->add_option("--trace", trace, "0: none, 1: layout + per-period offsets, 2: also per-grant SINR")
      ->check(CLI::Range(0, 2));

  auto* sweep = app.add_subcommand("sweep", "Sweep arrival rate x scheme x seed");
  sweep->add_option("--config", config, "Experiment file")->check(CLI::ExistingFile);
  sweep->add_option("--seed", seed, "Run only this seed");
  sweep->add_option("--out", out, "Output directory");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
  sweep->add_option("--trace", trace, "Ignored for sweeps")->check(CLI::Range(0, 2));

  auto* plot = app.add_subcommand("plot", "Render result CSV as SVG charts");
  plot->add_option("--csv", csv, "Result CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("--out", plot_out, "Output directory");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config, seed, lambda_dl, scheme, out, trace);
    if (*sweep) return cmd_sweep(config, seed, out, threads);
    if (*plot) return cmd_plot(csv, plot_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
