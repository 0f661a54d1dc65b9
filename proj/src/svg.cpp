// Copyright 2026 The shdoa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shdoa/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "shdoa/errors.hpp"

namespace shdoa {

namespace {

constexpr const char* kPalette[] = {"#3465a4", "#cc7a29", "#4e9a06",
                                    "#a40000", "#75507b", "#555753"};

}  // namespace

void write_bar_chart_svg(const std::string& path, const BarChart& chart) {
  const std::size_t n_groups = chart.group_labels.size();
  const std::size_t n_series = chart.series_names.size();
  if (n_groups == 0 || n_series == 0 || chart.values.size() != n_series)
    throw ConfigError("bar chart: inconsistent data");

  double y_max = chart.y_max;
  if (y_max <= 0.0) {
    for (std::size_t s = 0; s < n_series; ++s)
      for (std::size_t g = 0; g < n_groups; ++g) {
        double top = chart.values[s][g];
        if (!chart.errors.empty() && chart.errors[s][g] > 0.0)
          top += chart.errors[s][g];
        y_max = std::max(y_max, top);
      }
    y_max = y_max > 0.0 ? 1.1 * y_max : 1.0;
  }

  const double width = 640.0, height = 420.0;
  const double left = 70.0, right = 20.0, top = 50.0, bottom = 60.0;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  const double group_w = plot_w / n_groups;
  const double bar_w = 0.7 * group_w / n_series;

  auto ypix = [&](double v) { return top + plot_h * (1.0 - v / y_max); };

  std::ofstream out(path);
  if (!out) throw IoError("cannot open SVG file for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << chart.title << "</text>\n";

  // Axes and horizontal grid.
  for (int i = 0; i <= 5; ++i) {
    const double v = y_max * i / 5.0;
    const double y = ypix(v);
    out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\""
        << width - right << "\" y2=\"" << y
        << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-size=\"11\">";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2g", v);
    out << buf << "</text>\n";
  }
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\""
      << width - right << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";

  // Bars with whiskers.
  for (std::size_t g = 0; g < n_groups; ++g) {
    const double gx = left + g * group_w + 0.15 * group_w;
    for (std::size_t s = 0; s < n_series; ++s) {
      const double v = chart.values[s][g];
      const double x = gx + s * bar_w;
      const double y = ypix(std::min(v, y_max));
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\""
          << bar_w * 0.9 << "\" height=\"" << top + plot_h - y << "\" fill=\""
          << kPalette[s % 6] << "\"/>\n";
      if (!chart.errors.empty() && chart.errors[s][g] > 0.0) {
        const double e = chart.errors[s][g];
        const double cx = x + bar_w * 0.45;
        const double y1 = ypix(std::clamp(v - e, 0.0, y_max));
        const double y2 = ypix(std::clamp(v + e, 0.0, y_max));
        out << "<line x1=\"" << cx << "\" y1=\"" << y1 << "\" x2=\"" << cx
            << "\" y2=\"" << y2 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - 3 << "\" y1=\"" << y1 << "\" x2=\""
            << cx + 3 << "\" y2=\"" << y1 << "\" stroke=\"black\"/>\n";
        out << "<line x1=\"" << cx - 3 << "\" y1=\"" << y2 << "\" x2=\""
            << cx + 3 << "\" y2=\"" << y2 << "\" stroke=\"black\"/>\n";
      }
    }
    out << "<text x=\"" << left + (g + 0.5) * group_w << "\" y=\""
        << top + plot_h + 18 << "\" text-anchor=\"middle\" font-size=\"12\">"
        << chart.group_labels[g] << "</text>\n";
  }

  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-size=\"13\">" << chart.x_label
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">" << chart.y_label << "</text>\n";

  // Legend.
  double lx = left + 8.0;
  for (std::size_t s = 0; s < n_series; ++s) {
    out << "<rect x=\"" << lx << "\" y=\"32\" width=\"12\" height=\"12\" fill=\""
        << kPalette[s % 6] << "\"/>\n";
    out << "<text x=\"" << lx + 16 << "\" y=\"42\" font-size=\"12\">"
        << chart.series_names[s] << "</text>\n";
    lx += 18.0 + 8.0 * chart.series_names[s].size();
  }
  out << "</svg>\n";
  if (!out) throw IoError("failed writing SVG file: " + path);
}

}  // namespace shdoa
