// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dsm/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "dsm/error.hpp"

namespace dsm {
namespace {

constexpr double kWidth = 760.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 230.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr int kTicks = 5;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

using SeriesKey = std::pair<std::string, std::string>;  // (algorithm, topology)
// seed -> per-round max over nodes
using SeedCurves = std::map<std::string, std::vector<double>>;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

void read_csv(const std::string& path, std::map<SeriesKey, SeedCurves>& series) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::kInvalidParameter, "cannot open " + path);
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  require(line == kCsvHeader, ErrorKind::kInvalidParameter,
          path + ": header does not match the run CSV schema");
  int number = 1;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const auto f = split(line);
    require(f.size() == 10, ErrorKind::kInvalidParameter,
            path + " line " + std::to_string(number) + ": expected 10 columns");
    std::size_t round = 0;
    double ratio = 0.0;
    try {
      round = std::stoul(f[0]);
      ratio = std::stod(f[7]);
    } catch (const std::exception&) {
      fail(ErrorKind::kInvalidParameter, path + " line " + std::to_string(number) + ": bad number");
    }
    require(round >= 1, ErrorKind::kInvalidParameter, path + ": rounds are 1-based");
    auto& curve = series[{f[2], f[3]}][f[4]];
    if (curve.size() < round) curve.resize(round, -std::numeric_limits<double>::infinity());
    curve[round - 1] = std::max(curve[round - 1], ratio);
  }
}

std::string fmt(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string label(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.4g", v);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

}  // namespace

std::string render_ratio_svg(const std::vector<std::string>& csv_paths,
                             const std::string& title) {
  require(!csv_paths.empty(), ErrorKind::kInvalidParameter, "no CSV files to plot");
  std::map<SeriesKey, SeedCurves> series;
  for (const auto& path : csv_paths) read_csv(path, series);
  require(!series.empty(), ErrorKind::kInvalidParameter, "CSV files contain no rows");

  std::map<SeriesKey, std::vector<double>> means;
  std::size_t rounds = 0;
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& [key, seeds] : series) {
    std::size_t length = std::numeric_limits<std::size_t>::max();
    for (const auto& [seed, curve] : seeds) length = std::min(length, curve.size());
    std::vector<double> mean(length, 0.0);
    for (const auto& [seed, curve] : seeds)
      for (std::size_t t = 0; t < length; ++t) mean[t] += curve[t] / seeds.size();
    for (double v : mean) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    rounds = std::max(rounds, length);
    means[key] = std::move(mean);
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;
  const double pad = 0.05 * (hi - lo);
  hi += pad;
  if (lo < 0.0) lo -= pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double x_span = rounds > 1 ? static_cast<double>(rounds - 1) : 1.0;
  const auto px = [&](double round) { return kLeft + (round - 1.0) / x_span * plot_w; };
  const auto py = [&](double v) { return kTop + (hi - v) / (hi - lo) * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\">"
      << escape(title) << "</text>\n";
  svg << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(plot_w)
      << "\" height=\"" << fmt(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= kTicks; ++k) {
    const double v = lo + (hi - lo) * k / kTicks;
    const double r = 1.0 + x_span * k / kTicks;
    svg << "<text x=\"" << fmt(kLeft - 6) << "\" y=\"" << fmt(py(v) + 4)
        << "\" text-anchor=\"end\">" << label(v) << "</text>\n";
    svg << "<text x=\"" << fmt(px(r)) << "\" y=\"" << fmt(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\">" << label(std::round(r)) << "</text>\n";
  }
  svg << "<text x=\"" << fmt(kLeft + plot_w / 2) << "\" y=\"" << fmt(kHeight - 10)
      << "\" text-anchor=\"middle\">round t</text>\n";
  if (lo < 0.0) {
    svg << "<line x1=\"" << fmt(kLeft) << "\" y1=\"" << fmt(py(0)) << "\" x2=\""
        << fmt(kLeft + plot_w) << "\" y2=\"" << fmt(py(0))
        << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
  }

  std::size_t index = 0;
  for (const auto& [key, mean] : means) {
    const char* colour = kPalette[index % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t t = 0; t < mean.size(); ++t)
      svg << (t ? " " : "") << fmt(px(static_cast<double>(t + 1))) << "," << fmt(py(mean[t]));
    svg << "\"/>\n";
    const double ly = kTop + 14 + 18.0 * index;
    svg << "<line x1=\"" << fmt(kWidth - kRight + 16) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << fmt(kWidth - kRight + 40) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << colour
        << "\" stroke-width=\"2\"/>\n";
    svg << "<text class=\"legend\" x=\"" << fmt(kWidth - kRight + 46) << "\" y=\"" << fmt(ly)
        << "\">" << escape(key.first + " (" + key.second + ")") << "</text>\n";
    ++index;
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plots(const std::vector<std::string>& csv_paths, const std::string& out_path,
                const std::string& title) {
  const std::string svg = render_ratio_svg(csv_paths, title);
  std::ofstream out(out_path, std::ios::binary);
  require(out.good(), ErrorKind::kInvalidParameter, "cannot write " + out_path);
  out << svg;
}

}  // namespace dsm
