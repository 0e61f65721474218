#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "halfspace/core.hpp"

namespace halfspace {

/// One log-log panel: measured points and the fitted line.
struct SvgPanel {
  std::string title;
  std::vector<double> x;       // h values
  std::vector<double> y;       // norm estimates
  double slope = 0.0;          // fitted
  double intercept = 0.0;      // fitted (log-log)
  std::string subtitle;
};

/// Write stacked log-log panels to an SVG file.
inline void write_svg_panels(const std::vector<SvgPanel>& panels, const std::string& path) {
  const int W = 480, H = 360, ml = 70, mr = 20, mt = 40, mb = 50;
  std::ofstream out(path);
  if (!out) throw Error("emit_svg: cannot open " + path);
  const int total_h = static_cast<int>(panels.size()) * H;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << total_h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  int panel_idx = 0;
  for (const SvgPanel& p : panels) {
    const int oy = panel_idx * H;
    ++panel_idx;
    if (p.x.size() < 2) continue;
    double lx_min = 1e300, lx_max = -1e300, ly_min = 1e300, ly_max = -1e300;
    std::vector<double> lx(p.x.size()), ly(p.y.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) {
      lx[i] = std::log10(p.x[i]);
      ly[i] = std::log10(std::max(p.y[i], 1e-300));
      lx_min = std::min(lx_min, lx[i]);
      lx_max = std::max(lx_max, lx[i]);
      ly_min = std::min(ly_min, ly[i]);
      ly_max = std::max(ly_max, ly[i]);
    }
    const double pad_x = 0.05 * (lx_max - lx_min + 1e-12);
    const double pad_y = 0.08 * (ly_max - ly_min + 1e-12);
    lx_min -= pad_x;
    lx_max += pad_x;
    ly_min -= pad_y;
    ly_max += pad_y;
    auto X = [&](double v) { return ml + (v - lx_min) / (lx_max - lx_min) * (W - ml - mr); };
    auto Y = [&](double v) {
      return oy + mt + (ly_max - v) / (ly_max - ly_min) * (H - mt - mb);
    };
    // frame
    out << "<rect x=\"" << ml << "\" y=\"" << oy + mt << "\" width=\"" << W - ml - mr
        << "\" height=\"" << H - mt - mb << "\" fill=\"none\" stroke=\"#888\"/>\n";
    out << "<text x=\"" << ml << "\" y=\"" << oy + 22 << "\" font-weight=\"bold\">" << p.title
        << "</text>\n";
    out << "<text x=\"" << ml << "\" y=\"" << oy + H - 12 << "\" fill=\"#444\">" << p.subtitle
        << "</text>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"" << oy + H - 28
        << "\" text-anchor=\"middle\" fill=\"#444\">log10 h</text>\n";
    out << "<text x=\"14\" y=\"" << oy + mt + (H - mt - mb) / 2
        << "\" transform=\"rotate(-90 14 " << oy + mt + (H - mt - mb) / 2
        << ")\" text-anchor=\"middle\" fill=\"#444\">log10 estimate</text>\n";
    // fitted line across the x range
    {
      const double y0 = p.intercept / std::log(10.0) + p.slope * lx_min;
      const double y1 = p.intercept / std::log(10.0) + p.slope * lx_max;
      out << "<line x1=\"" << X(lx_min) << "\" y1=\"" << Y(y0) << "\" x2=\"" << X(lx_max)
          << "\" y2=\"" << Y(y1) << "\" stroke=\"#c33\" stroke-width=\"1.5\"/>\n";
    }
    for (std::size_t i = 0; i < lx.size(); ++i)
      out << "<circle cx=\"" << X(lx[i]) << "\" cy=\"" << Y(ly[i])
          << "\" r=\"3.5\" fill=\"#06c\"/>\n";
    // tick labels at data extremes
    std::ostringstream t;
    t.setf(std::ios::fixed);
    t.precision(2);
    t << lx_min + pad_x;
    out << "<text x=\"" << X(lx_min + pad_x) << "\" y=\"" << oy + H - mb + 16
        << "\" text-anchor=\"middle\" fill=\"#444\">" << t.str() << "</text>\n";
    t.str("");
    t << lx_max - pad_x;
    out << "<text x=\"" << X(lx_max - pad_x) << "\" y=\"" << oy + H - mb + 16
        << "\" text-anchor=\"middle\" fill=\"#444\">" << t.str() << "</text>\n";
  }
  out << "</svg>\n";
  if (!out.good()) throw Error("emit_svg: write failed for " + path);
}

}  // namespace halfspace
