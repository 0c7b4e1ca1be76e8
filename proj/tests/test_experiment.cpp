// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dyntdd/experiment.hpp"
#include "dyntdd/plot.hpp"

using namespace dyntdd;
namespace fs = std::filesystem;

namespace {

ExperimentSpec parse(const std::string& text) {
  std::istringstream in(text);
  return parse_experiment(in, "test.conf");
}

const char* kTiny = R"(
n_sites = 1
picos_per_sector = 1
ues_per_pico = 3
lambda_dl = 0.5, 1.0
seeds = 1, 2, 3
duration_ms = 1500
warmup_ms = 200
threads = 2
)";

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("dyntdd_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(Experiment, EmptyFileGivesDefaults) {
  const auto spec = parse("# nothing here\n\n");
  EXPECT_EQ(spec.lambda_dl.size(), 8u);
  EXPECT_EQ(spec.schemes.size(), 2u);
  EXPECT_EQ(spec.base.layout.n_sites, 19);
  EXPECT_EQ(spec.base.duration_ms, 60000);
  EXPECT_DOUBLE_EQ(spec.base.power.alpha, 0.8);
}

TEST(Experiment, ParsesValues) {
  const auto spec = parse(
      "schemes = baseline\nalpha = 0.7  # comment\ndelta_table = 1/4:0, 1/2:2, 1:4\nenb_enb_model = los\n"
      "ul_ul_interference = false\n");
  ASSERT_EQ(spec.schemes.size(), 1u);
  EXPECT_EQ(spec.schemes[0], Scheme::Baseline);
  EXPECT_DOUBLE_EQ(spec.base.power.alpha, 0.7);
  ASSERT_EQ(spec.base.power.delta_table.size(), 3u);
  EXPECT_DOUBLE_EQ(spec.base.power.delta_table[0].fraction, 0.25);
  EXPECT_DOUBLE_EQ(spec.base.power.delta_table[2].delta_db, 4.0);
  EXPECT_DOUBLE_EQ(spec.base.pathloss.enb_enb.intercept_db, 98.45);
  EXPECT_FALSE(spec.base.link.ul_ul_interference);
}

TEST(Experiment, ErrorsCarryLineNumbers) {
  try {
    parse("n_sites = 1\nalpha = 1.5\n");
    FAIL() << "expected an error";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("test.conf:2:"), std::string::npos) << e.what();
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos);
  }
  EXPECT_THROW(parse("no_such_key = 3\n"), ConfigError);
  EXPECT_THROW(parse("alpha 0.5\n"), ConfigError);
  EXPECT_THROW(parse("seeds =\n"), ConfigError);
  EXPECT_THROW(parse("schemes = fancy\n"), ConfigError);
  EXPECT_THROW(parse("n_sites = 2.5\n"), ConfigError);
  EXPECT_THROW(parse("warmup_ms = 70000\n"), ConfigError);
}

TEST(Experiment, SweepRowsAndDeterminism) {
  auto spec = parse(kTiny);
  const auto dir = scratch("sweep");
  const auto rows = run_experiment(spec, dir / "a.csv");
  ASSERT_EQ(rows.size(), 2u * 2u * 3u * 2u);
  EXPECT_DOUBLE_EQ(rows.front().lambda_ul, 0.25);
  EXPECT_DOUBLE_EQ(rows.back().lambda_ul, 0.5);
  for (const auto& r : rows) {
    if (r.scheme == Scheme::Baseline) {
      EXPECT_EQ(r.mean_delta_db, 0.0);
    }
    EXPECT_GE(r.completion_ratio, 0.0);
    EXPECT_LE(r.completion_ratio, 1.0);
  }
  spec.threads = 1;
  run_experiment(spec, dir / "b.csv");
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_FALSE(fs::exists(dir / "a.csv.partial"));
  fs::remove_all(dir);
}

TEST(Experiment, CsvRoundTrip) {
  std::vector<ResultRow> rows{{0.25, Scheme::Baseline, 1, Dir::DL, 12.5, 3.25, 0.98, 0.0},
                              {0.25, Scheme::Proposed, 1, Dir::UL, std::nullopt, std::nullopt, 1.0, 2.5}};
  std::stringstream s;
  write_csv(s, rows);
  const auto back = read_csv(s);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].scheme, Scheme::Baseline);
  EXPECT_DOUBLE_EQ(*back[0].avg_tput_mbps, 12.5);
  EXPECT_DOUBLE_EQ(*back[0].p5_tput_mbps, 3.25);
  EXPECT_EQ(back[1].direction, Dir::UL);
  EXPECT_FALSE(back[1].avg_tput_mbps);
  EXPECT_DOUBLE_EQ(back[1].mean_delta_db, 2.5);
}

TEST(Plot, WritesBothCharts) {
  const auto dir = scratch("plot");
  run_experiment(parse(kTiny), dir / "r.csv");
  const auto files = emit_plots(dir / "r.csv", dir / "fig");
  ASSERT_EQ(files.size(), 2u);
  for (const auto& f : files) {
    const auto svg = slurp(f);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    std::size_t n = 0;
    for (auto p = svg.find("class=\"series\""); p != std::string::npos; p = svg.find("class=\"series\"", p + 1)) ++n;
    EXPECT_EQ(n, 4u);
    EXPECT_NE(svg.find("data-label=\"proposed UL\""), std::string::npos);
  }
  fs::remove_all(dir);
}

TEST(Plot, EmptyCsvWritesNothing) {
  const auto dir = scratch("plot_empty");
  std::ofstream(dir / "e.csv") << kCsvHeader << '\n';
  EXPECT_THROW(emit_plots(dir / "e.csv", dir / "fig"), CsvError);
  EXPECT_FALSE(fs::exists(dir / "fig"));
  std::ofstream(dir / "bad.csv") << "a,b\n1,2\n";
  EXPECT_THROW(emit_plots(dir / "bad.csv", dir / "fig"), CsvError);
  EXPECT_THROW(emit_plots(dir / "missing.csv", dir / "fig"), CsvError);
  fs::remove_all(dir);
}

TEST(Plot, SingleSeedWhiskersCollapse) {
  std::vector<ResultRow> rows{{0.25, Scheme::Proposed, 1, Dir::UL, 4.0, 1.0, 1.0, 1.0},
                              {0.5, Scheme::Proposed, 1, Dir::UL, 3.0, 0.5, 1.0, 1.0}};
  const auto series = build_series(rows, false);
  ASSERT_EQ(series.size(), 1u);
  for (const auto& p : series[0].points) {
    EXPECT_EQ(p.lo, p.mean);
    EXPECT_EQ(p.hi, p.mean);
  }
  rows.push_back({0.5, Scheme::Proposed, 2, Dir::UL, 5.0, 0.5, 1.0, 1.0});
  const auto two = build_series(rows, false);
  EXPECT_DOUBLE_EQ(two[0].points[1].mean, 4.0);
  EXPECT_DOUBLE_EQ(two[0].points[1].lo, 3.0);
  EXPECT_DOUBLE_EQ(two[0].points[1].hi, 5.0);
}
