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

#ifndef FAIRRANK_SVG_PLOT_H_
#define FAIRRANK_SVG_PLOT_H_

#include <string>
#include <vector>

namespace fairrank {

struct ScatterPoint {
  double x;
  double y;
  double size;  // relative marker size
  std::string series;
};

// A self-contained SVG scatter plot over [0,1] x [0,1] with one colour per
// series and a legend.
std::string scatter_svg(const std::vector<ScatterPoint>& points, const std::string& title,
                        const std::string& x_label, const std::string& y_label);

}  // namespace fairrank

#endif  // FAIRRANK_SVG_PLOT_H_
