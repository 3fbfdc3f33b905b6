#include "zdl/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace zdl::svg {
namespace {

constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 30.0;
constexpr double kBottom = 45.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

std::pair<double, double> padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::abs(lo) > 0 ? 0.05 * std::abs(lo) : 1.0;
    return {lo - pad, hi + pad};
  }
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad};
}

void render_panel(std::ostringstream& out, const Panel& panel, double top, double width, double height) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  for (const auto& s : panel.series) {
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      xlo = std::min(xlo, s.xs[i]);
      xhi = std::max(xhi, s.xs[i]);
      ylo = std::min(ylo, s.ys[i]);
      yhi = std::max(yhi, s.ys[i]);
    }
  }
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  auto [x0, x1] = panel.x_range.value_or(padded(xlo, xhi));
  auto [y0, y1] = panel.y_range.value_or(padded(ylo, yhi));

  const double plot_w = width - kLeft - kRight;
  const double plot_h = height - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * plot_w; };
  auto py = [&](double y) { return top + kTop + (y1 - y) / (y1 - y0) * plot_h; };
  auto inside = [&](double x, double y) { return x >= x0 && x <= x1 && y >= y0 && y <= y1; };

  const std::string clip = "clip" + std::to_string(static_cast<int>(top));
  out << "<clipPath id=\"" << clip << "\"><rect x=\"" << num(kLeft) << "\" y=\"" << num(top + kTop) << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h) << "\"/></clipPath>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(top + kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
      << num(plot_h) << "\" fill=\"none\" stroke=\"#333\"/>\n";
  out << "<text x=\"" << num(width / 2) << "\" y=\"" << num(top + 18) << "\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(panel.title) << "</text>\n";
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(top + height - 8)
      << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(panel.x_label) << "</text>\n";
  out << "<text x=\"14\" y=\"" << num(top + kTop + plot_h / 2) << "\" text-anchor=\"middle\" font-size=\"12\" "
      << "transform=\"rotate(-90 14 " << num(top + kTop + plot_h / 2) << ")\">" << escape(panel.y_label)
      << "</text>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(top + kTop + plot_h + 16)
        << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(xv) << "</text>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(yv) + 3)
        << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(yv) << "</text>\n";
  }

  out << "<g clip-path=\"url(#" << clip << ")\">\n";
  for (double v : panel.vertical_lines) {
    if (v < x0 || v > x1) continue;
    out << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(top + kTop) << "\" x2=\"" << num(px(v)) << "\" y2=\""
        << num(top + kTop + plot_h) << "\" stroke=\"red\" stroke-dasharray=\"5,4\" stroke-width=\"1\"/>\n";
  }
  for (const auto& s : panel.series) {
    if (s.style == Style::points) {
      for (std::size_t i = 0; i < s.xs.size(); ++i) {
        if (!inside(s.xs[i], s.ys[i])) continue;
        out << "<circle cx=\"" << num(px(s.xs[i])) << "\" cy=\"" << num(py(s.ys[i])) << "\" r=\"2.5\" fill=\""
            << s.color << "\"/>\n";
      }
      continue;
    }
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\"";
    if (s.style == Style::dashed) out << " stroke-dasharray=\"6,4\"";
    out << " points=\"";
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      const double y = std::clamp(s.ys[i], y0 - (y1 - y0), y1 + (y1 - y0));
      if (s.style == Style::steps && i > 0) out << num(px(s.xs[i])) << ',' << num(py(s.ys[i - 1])) << ' ';
      out << num(px(s.xs[i])) << ',' << num(py(y)) << ' ';
    }
    out << "\"/>\n";
  }
  out << "</g>\n";

  double legend_y = top + kTop + 14;
  for (const auto& s : panel.series) {
    if (s.label.empty()) continue;
    out << "<text x=\"" << num(kLeft + plot_w - 8) << "\" y=\"" << num(legend_y) << "\" text-anchor=\"end\" "
        << "font-size=\"11\" fill=\"" << s.color << "\">" << escape(s.label) << "</text>\n";
    legend_y += 14;
  }
}

}  // namespace

std::string render(std::span<const Panel> panels, int width, int panel_height) {
  std::ostringstream out;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i)
    render_panel(out, panels[i], static_cast<double>(i) * panel_height, width, panel_height);
  out << "</svg>\n";
  return out.str();
}

}  // namespace zdl::svg
