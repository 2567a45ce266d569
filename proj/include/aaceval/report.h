// Copyright 2026 The aaceval Authors.
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

#ifndef AACEVAL_REPORT_H_
#define AACEVAL_REPORT_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace aaceval {

// Grouped bar data: one group per entry of `groups`, one bar per series.
// values[s][g] is series s in group g.
struct BarTable {
  std::string title;
  std::string y_label;
  double y_max = 100.0;
  std::vector<std::string> groups;
  std::vector<std::string> series;
  std::vector<std::vector<double>> values;
};

// Fixed-canvas static SVG. Output depends only on the input. Throws
// UsageError on an empty or ragged table.
std::string svg_bars(const BarTable& table);
// Cumulative curve over ranks 1..n, y in [0, 1].
std::string svg_cdf(std::span<const double> cdf, const std::string& title);

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace aaceval

#endif  // AACEVAL_REPORT_H_
