// SPDX-License-Identifier: Apache-2.0
//
// Throughput-vs-arrival-rate charts from a result CSV, written as SVG.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyntdd/experiment.hpp"

namespace dyntdd {

class CsvError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw CsvError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw CsvError("unexpected CSV header: " + line);
  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() != 8) throw CsvError("line " + std::to_string(lineno) + ": expected 8 fields");
    try {
      auto opt = [](const std::string& v) {
        return v == "NA" ? std::nullopt : std::optional<double>(detail::parse_number(v));
      };
      ResultRow r{};
      r.lambda_ul = detail::parse_number(f[0]);
      r.scheme = parse_scheme(f[1]);
      r.seed = static_cast<std::uint64_t>(detail::parse_int(f[2]));
      if (f[3] != "DL" && f[3] != "UL") throw std::invalid_argument("direction must be DL or UL");
      r.direction = f[3] == "DL" ? Dir::DL : Dir::UL;
      r.avg_tput_mbps = opt(f[4]);
      r.p5_tput_mbps = opt(f[5]);
      r.completion_ratio = detail::parse_number(f[6]);
      r.mean_delta_db = detail::parse_number(f[7]);
      rows.push_back(r);
    } catch (const std::exception& e) {
      throw CsvError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

struct SeriesPoint {
  double x;
  double mean;
  double lo;
  double hi;
};

struct Series {
  std::string label;
  std::vector<SeriesPoint> points;
};

// Seed-averaged series per (scheme, direction) with min/max across seeds.
// Rows without a value (no completed packets) are skipped.
inline std::vector<Series> build_series(const std::vector<ResultRow>& rows, bool percentile) {
  std::map<std::pair<std::string, std::string>, std::map<double, std::vector<double>>> grouped;
  for (const auto& r : rows) {
    auto& per_x = grouped[{to_string(r.scheme), to_string(r.direction)}];
    auto& vals = per_x[r.lambda_ul];
    const auto v = percentile ? r.p5_tput_mbps : r.avg_tput_mbps;
    if (v) vals.push_back(*v);
  }
  std::vector<Series> out;
  for (const auto& [key, per_x] : grouped) {
    Series s{key.first + " " + key.second, {}};
    for (const auto& [x, vals] : per_x) {
      if (vals.empty()) continue;
      double sum = 0.0;
      for (double v : vals) sum += v;
      s.points.push_back({x, sum / vals.size(), *std::min_element(vals.begin(), vals.end()),
                          *std::max_element(vals.begin(), vals.end())});
    }
    out.push_back(std::move(s));
  }
  return out;
}

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string svg_chart(const std::vector<Series>& series, const std::string& title, const std::string& ylabel) {
  constexpr double W = 720, H = 480, L = 80, R = 200, T = 50, B = 60;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymax = 0.0;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      xmin = std::min(xmin, p.x);
      xmax = std::max(xmax, p.x);
      ymax = std::max(ymax, p.hi);
    }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1;
  if (xmax == xmin) xmax = xmin + 1.0;
  if (ymax <= 0.0) ymax = 1.0;
  ymax *= 1.1;
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - y / ymax * (H - T - B); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << W / 2 << "\" y=\"25\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 5.0, yv = ymax * i / 5.0;
    o << "<text x=\"" << num(sx(xv)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">" << num(xv) << "</text>\n";
    o << "<text x=\"" << L - 8 << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">" << num(yv) << "</text>\n";
    o << "<line x1=\"" << L << "\" y1=\"" << num(sy(yv)) << "\" x2=\"" << W - R << "\" y2=\"" << num(sy(yv))
      << "\" stroke=\"#ddd\"/>\n";
  }
  o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\">UL arrival rate (packets/s)</text>\n";
  o << "<text x=\"20\" y=\"" << H / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << H / 2 << ")\">"
    << ylabel << "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const char* c = colors[i % 6];
    const char* dash = s.label.rfind("baseline", 0) == 0 ? " stroke-dasharray=\"6 4\"" : "";
    o << "<g class=\"series\" data-label=\"" << s.label << "\">\n";
    o << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\"" << dash << " points=\"";
    for (const auto& p : s.points) o << num(sx(p.x)) << ',' << num(sy(p.mean)) << ' ';
    o << "\"/>\n";
    for (const auto& p : s.points) {
      o << "<line x1=\"" << num(sx(p.x)) << "\" y1=\"" << num(sy(p.lo)) << "\" x2=\"" << num(sx(p.x)) << "\" y2=\""
        << num(sy(p.hi)) << "\" stroke=\"" << c << "\"/>\n";
      o << "<circle cx=\"" << num(sx(p.x)) << "\" cy=\"" << num(sy(p.mean)) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    o << "</g>\n";
    const double ly = T + 20.0 * i;
    o << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 45 << "\" y2=\"" << ly
      << "\" stroke=\"" << c << "\" stroke-width=\"2\"" << dash << "/>\n";
    o << "<text x=\"" << W - R + 52 << "\" y=\"" << ly + 4 << "\">" << s.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace detail

// Writes avg_throughput.svg and p5_throughput.svg into out_dir and returns
// their paths. Nothing is written if the CSV is malformed or has no rows.
inline std::vector<std::filesystem::path> emit_plots(const std::filesystem::path& csv_path,
                                                     const std::filesystem::path& out_dir) {
  std::ifstream in(csv_path);
  if (!in) throw CsvError("cannot open " + csv_path.string());
  const auto rows = read_csv(in);
  if (rows.empty()) throw CsvError("CSV has no result rows: " + csv_path.string());
  const auto avg = detail::svg_chart(build_series(rows, false), "Average packet throughput",
                                     "packet throughput (Mbps)");
  const auto p5 = detail::svg_chart(build_series(rows, true), "5%-ile packet throughput",
                                    "packet throughput (Mbps)");
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written{out_dir / "avg_throughput.svg", out_dir / "p5_throughput.svg"};
  std::ofstream(written[0], std::ios::binary) << avg;
  std::ofstream(written[1], std::ios::binary) << p5;
  return written;
}

}  // namespace dyntdd
