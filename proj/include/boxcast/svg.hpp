// Self-contained SVG chart emitters: line charts for series, stem charts with
// white-noise bands for correlograms, and fan charts for forecasts. Output is
// byte-deterministic for identical inputs and library version: fixed canvas,
// fixed precision, no timestamps.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "boxcast/arima.hpp"
#include "boxcast/errors.hpp"
#include "boxcast/series.hpp"
#include "boxcast/stats.hpp"
#include "boxcast/version.hpp"

namespace boxcast {

namespace svgdetail {

constexpr double kWidth = 840, kHeight = 520;
constexpr double kLeft = 78, kRight = 24, kTop = 46, kBottom = 54;

inline std::string num(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

struct LinearScale {
  double lo = 0, hi = 1, a = 0, b = 1;  // maps lo..hi onto a..b
  double operator()(double v) const { return a + (v - lo) / (hi - lo) * (b - a); }
};

// Round tick step to a 1/2/2.5/5 x 10^k grid aiming at ~6 intervals.
inline double nice_step(double range) {
  if (range <= 0) return 1.0;
  const double raw = range / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 2.5, 5.0, 10.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

inline std::vector<double> ticks(double lo, double hi) {
  const double step = nice_step(hi - lo);
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step)
    out.push_back(std::fabs(t) < step * 1e-9 ? 0.0 : t);
  return out;
}

inline std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Frame {
  LinearScale x, y;
  std::ostringstream body;

  Frame(double x_lo, double x_hi, double y_lo, double y_hi, double top, double bottom) {
    if (y_hi == y_lo) {
      y_lo -= 1.0;
      y_hi += 1.0;
    }
    x = {x_lo, x_hi, kLeft, kWidth - kRight};
    y = {y_lo, y_hi, bottom, top};  // SVG y grows downward
  }

  void axes(bool integer_x) {
    for (double t : ticks(y.lo, y.hi)) {
      const double py = y(t);
      body << "<line x1='" << num(kLeft) << "' y1='" << num(py) << "' x2='"
           << num(kWidth - kRight) << "' y2='" << num(py)
           << "' stroke='#dddddd' stroke-width='1'/>\n";
      body << "<text x='" << num(kLeft - 8) << "' y='" << num(py + 4)
           << "' text-anchor='end' font-size='12'>" << num(t, "%.6g") << "</text>\n";
    }
    for (double t : ticks(x.lo, x.hi)) {
      if (integer_x && t != std::floor(t)) continue;
      const double px = x(t);
      body << "<line x1='" << num(px) << "' y1='" << num(y.b) << "' x2='" << num(px) << "' y2='"
           << num(y.b + 5) << "' stroke='#444444' stroke-width='1'/>\n";
      body << "<text x='" << num(px) << "' y='" << num(y.b + 20)
           << "' text-anchor='middle' font-size='12'>" << num(t, "%.6g") << "</text>\n";
    }
    body << "<rect x='" << num(kLeft) << "' y='" << num(y.a > y.b ? y.b : y.a) << "' width='"
         << num(kWidth - kLeft - kRight) << "' height='" << num(std::fabs(y.a - y.b))
         << "' fill='none' stroke='#444444' stroke-width='1'/>\n";
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const char* color,
                double width = 1.8, const char* dash = nullptr) {
    if (pts.size() == 1) {
      body << "<circle cx='" << num(x(pts[0].first)) << "' cy='" << num(y(pts[0].second))
           << "' r='3.5' fill='" << color << "'/>\n";
      return;
    }
    body << "<polyline fill='none' stroke='" << color << "' stroke-width='" << num(width, "%g")
         << "'";
    if (dash) body << " stroke-dasharray='" << dash << "'";
    body << " points='";
    for (const auto& [vx, vy] : pts) body << num(x(vx)) << "," << num(y(vy)) << " ";
    body << "'/>\n";
  }
};

inline std::string document(const std::string& title, const std::string& body) {
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(kWidth, "%g") << "' height='"
      << num(kHeight, "%g") << "' viewBox='0 0 " << num(kWidth, "%g") << " "
      << num(kHeight, "%g") << "'>\n";
  out << "<desc>boxcast " << kVersion << "</desc>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << num(kWidth / 2) << "' y='26' text-anchor='middle' font-size='16' "
      << "font-family='sans-serif'>" << escape(title) << "</text>\n";
  out << "<g font-family='sans-serif' fill='#222222'>\n" << body << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace svgdetail

inline std::string svg_line_chart(const AnnualSeries& s, const std::string& title) {
  if (s.values.empty()) throw DataError("line chart: empty series");
  double lo = *std::min_element(s.values.begin(), s.values.end());
  double hi = *std::max_element(s.values.begin(), s.values.end());
  const double pad = (hi - lo) * 0.05 + 1e-12;
  svgdetail::Frame f(s.first_year, s.last_year() + (s.size() == 1 ? 1 : 0), lo - pad, hi + pad,
                     svgdetail::kTop, svgdetail::kHeight - svgdetail::kBottom);
  f.axes(true);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < s.size(); ++i)
    pts.emplace_back(s.year_at(i), s.values[i]);
  f.polyline(pts, "#1f77b4");
  return svgdetail::document(title.empty() ? s.label() : title, f.body.str());
}

// ACF (top panel) and PACF (bottom panel) stems with the ±1.959964/sqrt(n) band.
inline std::string svg_correlogram(const Correlogram& cg, const std::string& title) {
  std::ostringstream body;
  const double panel_h = (svgdetail::kHeight - svgdetail::kTop - svgdetail::kBottom - 40) / 2.0;
  const char* names[2] = {"ACF", "PACF"};
  for (int panel = 0; panel < 2; ++panel) {
    const std::vector<double>& vals = panel == 0 ? cg.acf : cg.pacf;
    const double top = svgdetail::kTop + panel * (panel_h + 40);
    const double bottom = top + panel_h;
    double lo = -cg.band, hi = cg.band;
    for (int k = 1; k <= cg.max_lag; ++k) {
      lo = std::min(lo, vals[k]);
      hi = std::max(hi, vals[k]);
    }
    lo = std::min(lo, -0.2) - 0.05;
    hi = std::max(hi, 1.0) + 0.05;
    svgdetail::Frame f(0, cg.max_lag + 1, lo, hi, top, bottom);
    f.axes(true);
    // white-noise band
    f.body << "<rect x='" << svgdetail::num(f.x(0)) << "' y='" << svgdetail::num(f.y(cg.band))
           << "' width='" << svgdetail::num(f.x(cg.max_lag + 1) - f.x(0)) << "' height='"
           << svgdetail::num(f.y(-cg.band) - f.y(cg.band))
           << "' fill='#1f77b4' fill-opacity='0.12'/>\n";
    f.body << "<line x1='" << svgdetail::num(f.x(0)) << "' y1='" << svgdetail::num(f.y(0))
           << "' x2='" << svgdetail::num(f.x(cg.max_lag + 1)) << "' y2='"
           << svgdetail::num(f.y(0)) << "' stroke='#444444' stroke-width='1'/>\n";
    const int k0 = panel == 0 ? 0 : 1;  // PACF starts at lag 1
    for (int k = k0; k <= cg.max_lag; ++k) {
      const double px = f.x(k);
      f.body << "<line x1='" << svgdetail::num(px) << "' y1='" << svgdetail::num(f.y(0))
             << "' x2='" << svgdetail::num(px) << "' y2='" << svgdetail::num(f.y(vals[k]))
             << "' stroke='#1f77b4' stroke-width='2.5'/>\n";
      f.body << "<circle cx='" << svgdetail::num(px) << "' cy='" << svgdetail::num(f.y(vals[k]))
             << "' r='2.5' fill='#1f77b4'/>\n";
    }
    f.body << "<text x='" << svgdetail::num(svgdetail::kLeft + 6) << "' y='"
           << svgdetail::num(top + 14) << "' font-size='13'>" << names[panel] << "</text>\n";
    body << f.body.str();
  }
  return svgdetail::document(title, body.str());
}

// History line, forecast line, and the shaded prediction band.
inline std::string svg_fanchart(const AnnualSeries& history, const ForecastTable& fc,
                                const std::string& title) {
  if (fc.rows.empty()) throw DataError("fanchart: empty forecast");
  double lo = fc.rows.front().lower, hi = fc.rows.front().upper;
  for (const ForecastRow& r : fc.rows) {
    lo = std::min(lo, r.lower);
    hi = std::max(hi, r.upper);
  }
  for (double v : history.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const double pad = (hi - lo) * 0.05 + 1e-12;
  svgdetail::Frame f(history.first_year, fc.rows.back().year, lo - pad, hi + pad, svgdetail::kTop,
                     svgdetail::kHeight - svgdetail::kBottom);
  f.axes(true);

  // interval polygon: upper path forward, lower path back
  f.body << "<polygon fill='#1f77b4' fill-opacity='0.18' stroke='none' points='";
  for (const ForecastRow& r : fc.rows)
    f.body << svgdetail::num(f.x(r.year)) << "," << svgdetail::num(f.y(r.upper)) << " ";
  for (auto it = fc.rows.rbegin(); it != fc.rows.rend(); ++it)
    f.body << svgdetail::num(f.x(it->year)) << "," << svgdetail::num(f.y(it->lower)) << " ";
  f.body << "'/>\n";

  std::vector<std::pair<double, double>> hist_pts;
  for (std::size_t i = 0; i < history.size(); ++i)
    hist_pts.emplace_back(history.year_at(i), history.values[i]);
  f.polyline(hist_pts, "#1f77b4");

  std::vector<std::pair<double, double>> fc_pts;
  fc_pts.emplace_back(history.last_year(), history.values.back());
  for (const ForecastRow& r : fc.rows) fc_pts.emplace_back(r.year, r.point);
  f.polyline(fc_pts, "#d62728", 1.8, "5,3");

  return svgdetail::document(title, f.body.str());
}

}  // namespace boxcast
