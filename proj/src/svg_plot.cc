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

#include "fairrank/svg_plot.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace fairrank {
namespace {

constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                    "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label) {
  constexpr double width = 640, height = 480, left = 70, right = 170, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  auto px = [&](double x) { return left + std::clamp(x, 0.0, 1.0) * plot_w; };
  auto py = [&](double y) { return top + (1.0 - std::clamp(y, 0.0, 1.0)) * plot_h; };

  std::vector<std::string> series;
  for (const auto& point : points) {
    if (std::find(series.begin(), series.end(), point.series) == series.end()) {
      series.push_back(point.series);
    }
  }
  auto colour = [&](const std::string& name) {
    const auto at = std::find(series.begin(), series.end(), name) - series.begin();
    return kPalette[at % 8];
  };

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(title) << "</text>\n";
  for (int k = 0; k <= 5; ++k) {
    const double f = k / 5.0;
    svg << "<line x1=\"" << px(f) << "\" y1=\"" << top << "\" x2=\"" << px(f) << "\" y2=\""
        << top + plot_h << "\" stroke=\"#eee\"/>\n";
    svg << "<line x1=\"" << left << "\" y1=\"" << py(f) << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << py(f) << "\" stroke=\"#eee\"/>\n";
    svg << "<text x=\"" << px(f) << "\" y=\"" << top + plot_h + 16
        << "\" text-anchor=\"middle\">" << f << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << py(f) + 4 << "\" text-anchor=\"end\">" << f
        << "</text>\n";
  }
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
      << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 18
      << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  svg << "<text transform=\"translate(18," << top + plot_h / 2
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";
  for (const auto& point : points) {
    svg << "<circle cx=\"" << px(point.x) << "\" cy=\"" << py(point.y) << "\" r=\""
        << 3.0 + 3.0 * point.size << "\" fill=\"" << colour(point.series)
        << "\" fill-opacity=\"0.6\" stroke=\"" << colour(point.series) << "\"/>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double y = top + 14 + 20.0 * s;
    svg << "<circle cx=\"" << left + plot_w + 20 << "\" cy=\"" << y << "\" r=\"5\" fill=\""
        << kPalette[s % 8] << "\"/>\n";
    svg << "<text x=\"" << left + plot_w + 32 << "\" y=\"" << y + 4 << "\">"
        << escape(series[s]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace fairrank
