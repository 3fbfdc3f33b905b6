#pragma once

// Minimal static SVG charts: stacked panels of lines, points and steps.

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zdl::svg {

enum class Style { line, dashed, points, steps };

struct Series {
  std::vector<double> xs;
  std::vector<double> ys;
  std::string color = "#1f77b4";
  Style style = Style::line;
  std::string label;
};

struct Panel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> vertical_lines;  // dashed red markers
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_range;
};

std::string render(std::span<const Panel> panels, int width = 900, int panel_height = 360);

}  // namespace zdl::svg
