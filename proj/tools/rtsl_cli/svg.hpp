#pragma once

// Dependency-free SVG line plots. Output depends only on the input rows and
// style, so identical inputs give identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtsl::cli {

struct PlotRow {
  double x = 0.0;
  double y = 0.0;
  double err = 0.0;
};

struct PlotStyle {
  int width = 640;
  int height = 420;
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  bool error_bars = false;
  int ticks = 5;
};

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
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
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

inline std::string emit_svg(const std::vector<PlotRow>& rows, const PlotStyle& style = {}) {
  if (rows.size() < 2) throw std::invalid_argument("plot needs at least 2 rows");
  std::string bad;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (!std::isfinite(r.x) || !std::isfinite(r.y) || (style.error_bars && !std::isfinite(r.err)))
      bad += (bad.empty() ? "" : ",") + std::to_string(i);
  }
  if (!bad.empty()) throw std::invalid_argument("non-finite values in rows " + bad);

  double x0 = rows[0].x, x1 = rows[0].x, y0 = rows[0].y, y1 = rows[0].y;
  for (const auto& r : rows) {
    const double e = style.error_bars ? std::abs(r.err) : 0.0;
    x0 = std::min(x0, r.x);
    x1 = std::max(x1, r.x);
    y0 = std::min(y0, r.y - e);
    y1 = std::max(y1, r.y + e);
  }
  if (x1 == x0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 == y0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double left = 70, right = 20, top = 40, bottom = 50;
  const double pw = style.width - left - right;
  const double ph = style.height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };
  using detail::num;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(style.width) +
       "\" height=\"" + std::to_string(style.height) + "\" viewBox=\"0 0 " +
       std::to_string(style.width) + " " + std::to_string(style.height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(style.width) + "\" height=\"" +
       std::to_string(style.height) + "\" fill=\"white\"/>\n";
  if (!style.title.empty())
    s += "<text x=\"" + num(style.width / 2.0) + "\" y=\"22\" text-anchor=\"middle\" " +
         "font-family=\"sans-serif\" font-size=\"14\">" + detail::escape(style.title) + "</text>\n";

  s += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(left + pw) +
       "\" y2=\"" + num(top + ph) + "\"/>\n";
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(top) + "\" x2=\"" + num(left) + "\" y2=\"" +
       num(top + ph) + "\"/>\n";
  s += "</g>\n";

  s += "<g id=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i < style.ticks; ++i) {
    const double f = style.ticks > 1 ? static_cast<double>(i) / (style.ticks - 1) : 0.0;
    const double xv = x0 + f * (x1 - x0);
    const double yv = y0 + f * (y1 - y0);
    s += "<line x1=\"" + num(sx(xv)) + "\" y1=\"" + num(top + ph) + "\" x2=\"" + num(sx(xv)) +
         "\" y2=\"" + num(top + ph + 5) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(sx(xv)) + "\" y=\"" + num(top + ph + 18) +
         "\" text-anchor=\"middle\">" + detail::tick_label(xv) + "</text>\n";
    s += "<line x1=\"" + num(left - 5) + "\" y1=\"" + num(sy(yv)) + "\" x2=\"" + num(left) +
         "\" y2=\"" + num(sy(yv)) + "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(left - 8) + "\" y=\"" + num(sy(yv) + 4) +
         "\" text-anchor=\"end\">" + detail::tick_label(yv) + "</text>\n";
  }
  s += "</g>\n";
  s += "<text x=\"" + num(left + pw / 2) + "\" y=\"" + num(style.height - 10.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
       detail::escape(style.x_label) + "</text>\n";
  s += "<text x=\"15\" y=\"" + num(top + ph / 2) + "\" text-anchor=\"middle\" " +
       "font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 15 " +
       num(top + ph / 2) + ")\">" + detail::escape(style.y_label) + "</text>\n";

  if (style.error_bars) {
    s += "<g id=\"errors\" stroke=\"gray\" stroke-width=\"1\">\n";
    for (const auto& r : rows)
      s += "<line x1=\"" + num(sx(r.x)) + "\" y1=\"" + num(sy(r.y - std::abs(r.err))) + "\" x2=\"" +
           num(sx(r.x)) + "\" y2=\"" + num(sy(r.y + std::abs(r.err))) + "\"/>\n";
    s += "</g>\n";
  }

  s += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ' ';
    s += num(sx(rows[i].x)) + "," + num(sy(rows[i].y));
  }
  s += "\"/>\n</svg>\n";
  return s;
}

}  // namespace rtsl::cli
