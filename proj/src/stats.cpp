#include "zdl/stats.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <tuple>

#include "zdl/csv.hpp"
#include "zdl/errors.hpp"

namespace zdl {

void Curve::validate() const {
  if (xs.size() != ys.size()) throw ParameterError("curve xs and ys differ in length");
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw ParameterError("curve xs must be strictly increasing");
}

Curve second_derivative(const Curve& curve) {
  curve.validate();
  if (curve.size() < 3) throw InsufficientPointsError("second derivative needs at least 3 points");
  Curve out;
  out.xs.reserve(curve.size() - 2);
  out.ys.reserve(curve.size() - 2);
  const auto& x = curve.xs;
  const auto& y = curve.ys;
  for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    out.xs.push_back(x[i]);
    out.ys.push_back(2.0 * (h1 * y[i + 1] - (h1 + h2) * y[i] + h2 * y[i - 1]) / (h1 * h2 * (h1 + h2)));
  }
  return out;
}

Curve smooth(const Curve& curve, std::size_t window) {
  curve.validate();
  if (window == 0 || window % 2 == 0) throw ParameterError("smoothing window must be odd and positive");
  if (window > curve.size()) throw ParameterError("smoothing window exceeds curve length");
  if (window == 1) return curve;

  const std::size_t half = window / 2;
  const std::size_t len = curve.size();
  Curve out{curve.xs, std::vector<double>(len)};
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t h = std::min({half, i, len - 1 - i});
    double sum = 0.0;
    for (std::size_t j = i - h; j <= i + h; ++j) sum += curve.ys[j];
    out.ys[i] = sum / static_cast<double>(2 * h + 1);
  }
  return out;
}

std::size_t smoothing_window_for_span(const Curve& curve, double span) {
  curve.validate();
  if (curve.size() < 2 || !(span > 0.0)) return 1;
  const double spacing = (curve.xs.back() - curve.xs.front()) / static_cast<double>(curve.size() - 1);
  auto points = static_cast<std::size_t>(std::floor(span / spacing));
  if (points < 1) points = 1;
  if (points % 2 == 0) --points;
  return std::min(points, curve.size() % 2 == 0 ? curve.size() - 1 : curve.size());
}

ExtremaReport find_local_minima(const Curve& curve, double min_prominence, MinimumLocation location) {
  curve.validate();
  if (!(min_prominence >= 0.0)) throw ParameterError("min_prominence must be non-negative");
  ExtremaReport report;
  const auto& x = curve.xs;
  const auto& y = curve.ys;
  const std::size_t len = curve.size();

  std::size_t i = 1;
  while (i + 1 < len) {
    if (!(y[i] < y[i - 1])) {
      ++i;
      continue;
    }
    std::size_t last = i;  // plateau end
    while (last + 1 < len && y[last + 1] == y[i]) ++last;
    if (last + 1 >= len || !(y[last + 1] > y[i])) {
      i = last + 1;
      continue;
    }

    // Lowest enclosing saddle: walk outwards until a strictly lower point.
    double left_peak = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] < y[i]) break;
      left_peak = std::max(left_peak, y[j]);
    }
    double right_peak = y[i];
    for (std::size_t j = last + 1; j < len; ++j) {
      if (y[j] < y[i]) break;
      right_peak = std::max(right_peak, y[j]);
    }
    const double prominence = std::min(left_peak, right_peak) - y[i];

    if (prominence > min_prominence) {
      double where = 0.5 * (x[i] + x[last]);
      if (location == MinimumLocation::vertex && last == i) {
        const double xa = x[i - 1], xb = x[i], xc = x[i + 1];
        const double ya = y[i - 1], yb = y[i], yc = y[i + 1];
        // Parabola through three points; the vertex lies inside (xa, xc).
        const double num = (xb - xa) * (xb - xa) * (yb - yc) - (xb - xc) * (xb - xc) * (yb - ya);
        const double den = (xb - xa) * (yb - yc) - (xb - xc) * (yb - ya);
        if (den != 0.0) where = xb - 0.5 * num / den;
      }
      report.minima_x.push_back(where);
      report.prominence.push_back(prominence);
    }
    i = last + 1;
  }
  return report;
}

DetectionReport match_extrema(const ExtremaReport& detected, std::span<const double> reference, double tolerance) {
  if (!(tolerance >= 0.0)) throw ParameterError("tolerance must be non-negative");
  const auto& found = detected.minima_x;

  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t d = 0; d < found.size(); ++d) {
    const auto lo = std::lower_bound(reference.begin(), reference.end(), found[d] - tolerance);
    for (auto it = lo; it != reference.end() && *it <= found[d] + tolerance; ++it) {
      const double err = std::abs(found[d] - *it);
      if (err <= tolerance) pairs.emplace_back(err, d, static_cast<std::size_t>(it - reference.begin()));
    }
  }
  std::sort(pairs.begin(), pairs.end());

  std::vector<bool> used_d(found.size(), false);
  std::vector<bool> used_r(reference.size(), false);
  DetectionReport report;
  for (const auto& [err, d, r] : pairs) {
    if (used_d[d] || used_r[r]) continue;
    used_d[d] = used_r[r] = true;
    report.matches.push_back({found[d], reference[r], err});
  }
  std::sort(report.matches.begin(), report.matches.end(),
            [](const ExtremumMatch& a, const ExtremumMatch& b) { return a.reference < b.reference; });
  for (std::size_t d = 0; d < found.size(); ++d)
    if (!used_d[d]) report.unmatched_detected.push_back(found[d]);
  for (std::size_t r = 0; r < reference.size(); ++r)
    if (!used_r[r]) report.unmatched_reference.push_back(reference[r]);
  return report;
}

void write_detection_csv(std::ostream& out, const DetectionReport& report) {
  out << "detected_x,reference_x,abs_error\n";
  for (const auto& m : report.matches)
    out << format_number(m.detected) << ',' << format_number(m.reference) << ',' << format_number(m.abs_error) << '\n';
  out << "# unmatched_detected=" << report.unmatched_detected.size() << '\n';
  out << "# unmatched_reference=" << report.unmatched_reference.size() << '\n';
}

}  // namespace zdl
