#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "zdl/delta_engine.hpp"
#include "zdl/johnson.hpp"
#include "zdl/stats.hpp"
#include "zdl/zero_source.hpp"

namespace zdl {

// Montgomery's pair correlation 1 - (sin(pi x) / (pi x))^2.
double montgomery_r2(double x);

// Rescales gaps by the local density ln(t / 2 pi) / (2 pi) and sums them,
// starting at 0. Throws DomainError for ordinates at or below 2 pi.
std::vector<double> unfold(const ZeroSet& zeros);

// Histogram of all pairwise differences in (0, max_x], divided by
// (count * bin_width); xs are bin centres.
Curve empirical_pair_correlation(std::span<const double> unfolded, double max_x, double bin_width);

struct SkewnessCrossing {
  double zero = 0.0;
  double skew_before = 0.0;
  double skew_after = 0.0;
};

struct SkewnessProfile {
  std::vector<double> mean_delta;  // ascending
  std::vector<double> skewness;
  std::vector<SkewnessCrossing> crossings;
};

// For each reference zero strictly inside the curve's mean range, the
// skewness at the nearest entries strictly left and right of it.
SkewnessProfile skewness_profile(const MomentCurve& curve, std::span<const double> reference_zeros);

struct PlanePoint {
  std::size_t n = 0;
  double skewness = 0.0;
  double kurtosis = 0.0;
  JohnsonFamily family = JohnsonFamily::SU;
};

struct PlaneGroup {
  std::string dataset;
  std::vector<PlanePoint> points;
  std::size_t dropped = 0;  // rows violating kurtosis > 1 + skewness^2
};

struct LabeledCurve {
  std::string dataset;
  MomentCurve curve;
};

struct PlaneReport {
  std::vector<PlaneGroup> groups;
  std::vector<PlaneBoundaryPoint> boundary;  // SL curve for delta in [0.3, 10]
};

PlaneReport plane_report(std::span<const LabeledCurve> curves, std::size_t boundary_samples = 200);

// Mahalanobis distance of the point with offset n = `single` from the
// cluster formed by every other point of the group, using the cluster's
// sample covariance in the (skewness, kurtosis) plane.
double plane_separation(const PlaneGroup& group, std::size_t single = 1);

struct DetectionConfig {
  std::size_t smoothing_window = 0;  // 0: derive from smoothing_span
  double smoothing_span = 0.65;      // ordinate units covered by the auto window
  double prominence = -1.0;          // < 0: prominence_factor * sd of the second derivative
  double prominence_factor = 1.0;
  double tolerance = 0.1;
  MinimumLocation location = MinimumLocation::vertex;
  unsigned threads = 1;
};

struct DetectionResult {
  MomentCurve moments;
  Curve variance;   // variance over mean(delta_n)
  Curve smoothed;
  Curve second;     // second derivative of the smoothed variance
  ExtremaReport minima;
  DetectionReport report;
  std::size_t window = 1;
  double prominence = 0.0;
};

// sweep -> variance curve -> smooth -> second derivative -> prominent minima
// -> greedy match against the reference zeros lying inside the second
// derivative's x range.
DetectionResult detect_zeros_end_to_end(const ZeroSet& zeros, std::size_t n_from, std::size_t n_to,
                                        std::span<const double> reference, const DetectionConfig& config = {});

// `dataset,n,skewness,kurtosis,family`
void write_plane_csv(std::ostream& out, const PlaneReport& report);
// `skew_sq,kurtosis`
void write_boundary_csv(std::ostream& out, const PlaneReport& report);
// `x,empirical,model`
void write_paircorr_csv(std::ostream& out, const Curve& empirical);

}  // namespace zdl
