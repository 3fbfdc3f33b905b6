#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace zdl {

// Sampled function with strictly increasing abscissae.
struct Curve {
  std::vector<double> xs;
  std::vector<double> ys;

  std::size_t size() const { return xs.size(); }
  // Throws ParameterError on unequal lengths or non-increasing xs.
  void validate() const;
};

// Three-point second difference on a non-uniform grid, at the interior points.
Curve second_derivative(const Curve& curve);

// Centred moving average; the window shrinks symmetrically near the ends.
Curve smooth(const Curve& curve, std::size_t window);

// Largest odd window (at least 1) whose span in x stays within `span`,
// judged from the mean grid spacing.
std::size_t smoothing_window_for_span(const Curve& curve, double span);

enum class MinimumLocation {
  grid,    // the sample point itself (plateaus: midpoint)
  vertex,  // vertex of the parabola through the minimum and its neighbours
};

struct ExtremaReport {
  std::vector<double> minima_x;    // ascending
  std::vector<double> prominence;  // gap to the lowest enclosing saddle
};

ExtremaReport find_local_minima(const Curve& curve, double min_prominence,
                                MinimumLocation location = MinimumLocation::grid);

struct ExtremumMatch {
  double detected = 0.0;
  double reference = 0.0;
  double abs_error = 0.0;
};

struct DetectionReport {
  std::vector<ExtremumMatch> matches;  // ordered by reference
  std::vector<double> unmatched_detected;
  std::vector<double> unmatched_reference;
};

// Greedy matching: closest pairs first, each point used at most once, only
// pairs within `tolerance`.
DetectionReport match_extrema(const ExtremaReport& detected, std::span<const double> reference, double tolerance);

// `detected_x,reference_x,abs_error` rows plus `# unmatched_...` trailers.
void write_detection_csv(std::ostream& out, const DetectionReport& report);

}  // namespace zdl
