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

#pragma once

#include <string>
#include <vector>

namespace shdoa {

/// Minimal grouped bar chart with error whiskers.
/// values[series][group]; negative error entries suppress the whisker.
struct BarChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::string> group_labels;
  std::vector<std::string> series_names;
  std::vector<std::vector<double>> values;
  std::vector<std::vector<double>> errors;
  double y_max = 0.0;  // 0 = auto
};

void write_bar_chart_svg(const std::string& path, const BarChart& chart);

}  // namespace shdoa
