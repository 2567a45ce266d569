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

#include "aaceval/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "aaceval/error.h"

namespace aaceval {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 160.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 70.0;

// Fixed palette, cycled by series index.
constexpr const char* kColors[] = {"#4c72b0", "#dd8452", "#55a868", "#c44e52",
                                   "#8172b3", "#937860"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out.push_back(c);
    }
  }
  return out;
}

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
      << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth)
      << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"25\" text-anchor=\"middle\" "
      << "font-size=\"15\">" << escape_xml(title) << "</text>\n";
}

// Axes with five horizontal grid lines from 0 to y_max.
void axes(std::ostringstream& out, double y_max, const std::string& y_label) {
  const double plot_h = kHeight - kTop - kBottom;
  const double x1 = kWidth - kRight;
  for (int i = 0; i <= 5; ++i) {
    const double y = kTop + plot_h * (1.0 - i / 5.0);
    out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(x1) << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << num(y_max * i / 5.0) << "</text>\n";
  }
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\""
      << num(kLeft) << "\" y2=\"" << num(kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom)
      << "\" x2=\"" << num(x1) << "\" y2=\"" << num(kHeight - kBottom)
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">" << escape_xml(y_label) << "</text>\n";
}

}  // namespace

std::string svg_bars(const BarTable& table) {
  if (table.groups.empty() || table.series.empty()) {
    throw UsageError("svg_bars: empty table");
  }
  if (table.values.size() != table.series.size()) {
    throw UsageError("svg_bars: one value row per series expected");
  }
  for (const auto& row : table.values) {
    if (row.size() != table.groups.size()) {
      throw UsageError("svg_bars: ragged value table");
    }
  }
  if (!(table.y_max > 0.0)) throw UsageError("svg_bars: y_max must be > 0");
  std::ostringstream out;
  open_svg(out, table.title);
  axes(out, table.y_max, table.y_label);
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double group_w = plot_w / static_cast<double>(table.groups.size());
  const double bar_w = group_w * 0.8 / static_cast<double>(table.series.size());
  for (std::size_t g = 0; g < table.groups.size(); ++g) {
    const double gx = kLeft + g * group_w + group_w * 0.1;
    for (std::size_t s = 0; s < table.series.size(); ++s) {
      const double v = std::clamp(table.values[s][g], 0.0, table.y_max);
      const double h = plot_h * v / table.y_max;
      out << "<rect x=\"" << num(gx + s * bar_w) << "\" y=\""
          << num(kHeight - kBottom - h) << "\" width=\"" << num(bar_w)
          << "\" height=\"" << num(h) << "\" fill=\""
          << kColors[s % std::size(kColors)] << "\"/>\n";
    }
    out << "<text x=\"" << num(kLeft + (g + 0.5) * group_w) << "\" y=\""
        << num(kHeight - kBottom + 18) << "\" text-anchor=\"middle\">"
        << escape_xml(table.groups[g]) << "</text>\n";
  }
  for (std::size_t s = 0; s < table.series.size(); ++s) {
    const double y = kTop + 10 + s * 20.0;
    const double x = kWidth - kRight + 15;
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 10)
        << "\" width=\"12\" height=\"12\" fill=\""
        << kColors[s % std::size(kColors)] << "\"/>\n";
    out << "<text x=\"" << num(x + 18) << "\" y=\"" << num(y) << "\">"
        << escape_xml(table.series[s]) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string svg_cdf(std::span<const double> cdf, const std::string& title) {
  if (cdf.empty()) throw UsageError("svg_cdf: empty curve");
  std::ostringstream out;
  open_svg(out, title);
  axes(out, 1.0, "cumulative share of tokens");
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const double n = static_cast<double>(cdf.size());
  // Long vocabularies are thinned to at most 1000 vertices; the last point
  // is always kept.
  const std::size_t step = std::max<std::size_t>(1, cdf.size() / 1000);
  out << "<polyline fill=\"none\" stroke=\"" << kColors[0]
      << "\" stroke-width=\"2\" points=\"";
  bool first = true;
  for (std::size_t i = 0; i < cdf.size(); i += step) {
    if (!first) out << ' ';
    first = false;
    out << num(kLeft + plot_w * (i + 1) / n) << ','
        << num(kTop + plot_h * (1.0 - cdf[i]));
  }
  if ((cdf.size() - 1) % step != 0) {
    out << ' ' << num(kLeft + plot_w) << ','
        << num(kTop + plot_h * (1.0 - cdf.back()));
  }
  out << "\"/>\n";
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\""
      << num(kHeight - kBottom + 40) << "\" text-anchor=\"middle\">word rank (1.."
      << cdf.size() << ")</text>\n";
  out << "</svg>\n";
  return out.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out << contents;
  if (!out) throw DataError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace aaceval
