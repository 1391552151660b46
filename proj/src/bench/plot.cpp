// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The AdamNX Authors.

#include "adamnx/bench/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "adamnx/errors.hpp"

namespace adamnx::bench {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

double x_of(const PlotSeries& s, std::size_t i) {
  return s.x.empty() ? static_cast<double>(i + 1) : s.x[i];
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string render_svg(std::span<const PlotSeries> series,
                       const PlotOptions& options) {
  for (const PlotSeries& s : series) {
    if (!s.x.empty() && s.x.size() != s.y.size()) {
      throw ShapeMismatch("plot series '" + s.label + "' has " +
                          std::to_string(s.x.size()) + " x values and " +
                          std::to_string(s.y.size()) + " y values");
    }
  }
  Range xr, yr;
  for (const PlotSeries& s : series) {
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      xr.add(x_of(s, i));
      yr.add(s.y[i]);
    }
  }
  xr.finish();
  yr.finish();

  const double w = options.width, h = options.height;
  const double left = 70, right = 180, top = 20, bottom = 50;
  const double pw = w - left - right, ph = h - top - bottom;
  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
     << "\" height=\"" << options.height << "\" viewBox=\"0 0 "
     << options.width << ' ' << options.height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\""
     << num(pw) << "\" height=\"" << num(ph)
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double fx = xr.lo + (xr.hi - xr.lo) * k / 5.0;
    const double fy = yr.lo + (yr.hi - yr.lo) * k / 5.0;
    os << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(top + ph)
       << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(top + ph + 5)
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(top + ph + 18)
       << "\" text-anchor=\"middle\">" << tick_label(fx) << "</text>\n";
    os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(py(fy))
       << "\" x2=\"" << num(left) << "\" y2=\"" << num(py(fy))
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\">" << tick_label(fy) << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(h - 10)
     << "\" text-anchor=\"middle\">" << escape_xml(options.x_label)
     << "</text>\n";
  os << "<text transform=\"translate(16 " << num(top + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">"
     << escape_xml(options.y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const PlotSeries& s = series[k];
    const char* color = kPalette[k % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double x = x_of(s, i);
      if (!std::isfinite(x) || !std::isfinite(s.y[i])) continue;
      if (!first) os << ' ';
      os << num(px(x)) << ',' << num(py(s.y[i]));
      first = false;
    }
    os << "\"/>\n";
    const double ly = top + 15 + 20.0 * static_cast<double>(k);
    os << "<line x1=\"" << num(left + pw + 15) << "\" y1=\"" << num(ly)
       << "\" x2=\"" << num(left + pw + 40) << "\" y2=\"" << num(ly)
       << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(left + pw + 45) << "\" y=\"" << num(ly + 4)
       << "\">" << escape_xml(s.label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

void emit_plot(std::span<const PlotSeries> series,
               const std::filesystem::path& path, const PlotOptions& options) {
  const std::string svg = render_svg(series, options);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << svg;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace adamnx::bench
