/*
 * Copyright 2026 The qdl-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qdl {

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartLabels {
  std::string title;
  std::string x;
  std::string y;
};

/// Static SVG 1.1 line chart: one polyline per series, axes with ticks, a
/// dashed zero line when the y range straddles zero, and a legend.
std::string line_chart_svg(const std::vector<ChartSeries>& series, const ChartLabels& labels);

}  // namespace qdl
