#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "llmfootprint/errors.hpp"

namespace llmfp {
namespace svg {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// One cluster of bars on the category axis.
struct BarGroup {
  std::string label;
  std::vector<double> values;  // one per series; <= 0 plots as a gap
};

struct ChartSpec {
  std::string title;
  std::string y_label;
  std::vector<std::string> series;
  std::vector<BarGroup> groups;
  int width = 1200;
  int height = 480;
};

inline constexpr const char* kPalette[] = {"#4878a8", "#e49444", "#5ba053",
                                           "#c44e52", "#8172b3", "#937860"};

// Grouped bar chart with a log10 value axis, emitted as bare SVG primitives.
// Output is a pure function of the spec: fixed ordering, fixed formatting.
inline std::string grouped_bar_chart_log(const ChartSpec& spec) {
  if (spec.groups.empty() || spec.series.empty())
    throw InternalError("grouped_bar_chart_log: empty chart");
  double vmin = 0.0, vmax = 0.0;
  for (const auto& g : spec.groups)
    for (double v : g.values)
      if (v > 0.0) {
        vmin = vmin == 0.0 ? v : std::min(vmin, v);
        vmax = std::max(vmax, v);
      }
  if (vmax <= 0.0) throw InternalError("grouped_bar_chart_log: no positive values");
  const double lo = std::floor(std::log10(vmin));
  const double hi = std::ceil(std::log10(vmax) + 1e-12);
  const double span = std::max(hi - lo, 1.0);

  const double ml = 70, mr = 20, mt = 40, mb = 120;
  const double pw = spec.width - ml - mr;
  const double ph = spec.height - mt - mb;
  auto ypos = [&](double v) { return mt + ph * (1.0 - (std::log10(v) - lo) / span); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << " " << spec.height << "\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << spec.width << "\" height=\"" << spec.height
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(ml) << "\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">"
      << escape(spec.title) << "</text>\n";

  for (int e = static_cast<int>(lo); e <= static_cast<int>(hi); ++e) {
    const double y = ypos(std::pow(10.0, e));
    out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(y) << "\" x2=\"" << num(ml + pw)
        << "\" y2=\"" << num(y) << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << num(ml - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e" << e
        << "</text>\n";
  }
  out << "<text x=\"14\" y=\"" << num(mt + ph / 2)
      << "\" transform=\"rotate(-90 14 " << num(mt + ph / 2)
      << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(spec.y_label) << "</text>\n";

  const double group_w = pw / spec.groups.size();
  const double bar_w = group_w * 0.8 / spec.series.size();
  for (std::size_t gi = 0; gi < spec.groups.size(); ++gi) {
    const auto& g = spec.groups[gi];
    const double gx = ml + gi * group_w + group_w * 0.1;
    for (std::size_t si = 0; si < spec.series.size() && si < g.values.size(); ++si) {
      const double v = g.values[si];
      if (!(v > 0.0)) continue;
      const double y = ypos(v);
      out << "<rect x=\"" << num(gx + si * bar_w) << "\" y=\"" << num(y) << "\" width=\""
          << num(bar_w) << "\" height=\"" << num(mt + ph - y) << "\" fill=\""
          << kPalette[si % 6] << "\"/>\n";
    }
    const double lx = gx + group_w * 0.4;
    const double ly = mt + ph + 10;
    out << "<text x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" transform=\"rotate(-55 "
        << num(lx) << " " << num(ly)
        << ")\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape(g.label) << "</text>\n";
  }

  for (std::size_t si = 0; si < spec.series.size(); ++si) {
    const double x = ml + pw - 150.0;
    const double y = mt + 16.0 * si;
    out << "<rect x=\"" << num(x) << "\" y=\"" << num(y - 9) << "\" width=\"10\" height=\"10\""
        << " fill=\"" << kPalette[si % 6] << "\"/>\n";
    out << "<text x=\"" << num(x + 14) << "\" y=\"" << num(y)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(spec.series[si])
        << "</text>\n";
  }

  out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt) << "\" x2=\"" << num(ml)
      << "\" y2=\"" << num(mt + ph) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << num(ml) << "\" y1=\"" << num(mt + ph) << "\" x2=\"" << num(ml + pw)
      << "\" y2=\"" << num(mt + ph) << "\" stroke=\"black\"/>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace svg
}  // namespace llmfp
