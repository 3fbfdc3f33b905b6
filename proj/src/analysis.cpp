#include "zdl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "zdl/csv.hpp"
#include "zdl/errors.hpp"

namespace zdl {

double montgomery_r2(double x) {
  if (x == 0.0) return 0.0;
  const double px = std::numbers::pi * x;
  const double sinc = std::sin(px) / px;
  return 1.0 - sinc * sinc;
}

std::vector<double> unfold(const ZeroSet& zeros) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  std::vector<double> out;
  out.reserve(zeros.size());
  if (zeros.size() == 0) return out;
  const double base = zeros.base.to_double();
  if (!(base + zeros.offsets.front() > kTwoPi)) throw DomainError("unfold needs ordinates above 2 pi");

  double position = 0.0;
  out.push_back(position);
  for (std::size_t i = 1; i < zeros.size(); ++i) {
    const double gap = zeros.offsets[i] - zeros.offsets[i - 1];
    position += gap * std::log((base + zeros.offsets[i - 1]) / kTwoPi) / kTwoPi;
    out.push_back(position);
  }
  return out;
}

Curve empirical_pair_correlation(std::span<const double> unfolded, double max_x, double bin_width) {
  if (!(max_x > 0.0) || !(bin_width > 0.0)) throw ParameterError("max_x and bin_width must be positive");
  if (unfolded.size() < 1000) throw InsufficientPointsError("pair correlation needs at least 1000 points");
  const auto bins = static_cast<std::size_t>(std::llround(max_x / bin_width));
  if (bins == 0) throw ParameterError("bin_width exceeds max_x");

  std::vector<double> counts(bins, 0.0);
  for (std::size_t i = 0; i < unfolded.size(); ++i) {
    for (std::size_t j = i + 1; j < unfolded.size(); ++j) {
      const double d = unfolded[j] - unfolded[i];
      if (d > max_x) break;
      if (!(d > 0.0)) continue;
      const auto bin = std::min(static_cast<std::size_t>(d / bin_width), bins - 1);
      counts[bin] += 1.0;
    }
  }

  Curve out;
  const double norm = 1.0 / (static_cast<double>(unfolded.size()) * bin_width);
  for (std::size_t b = 0; b < bins; ++b) {
    out.xs.push_back((static_cast<double>(b) + 0.5) * bin_width);
    out.ys.push_back(counts[b] * norm);
  }
  return out;
}

SkewnessProfile skewness_profile(const MomentCurve& curve, std::span<const double> reference_zeros) {
  std::vector<std::pair<double, double>> entries;
  for (const auto& row : curve.rows) entries.emplace_back(row.moments.mean, row.moments.skewness);
  std::sort(entries.begin(), entries.end());

  SkewnessProfile profile;
  for (const auto& [mean, skew] : entries) {
    profile.mean_delta.push_back(mean);
    profile.skewness.push_back(skew);
  }
  if (entries.empty()) return profile;

  for (double zero : reference_zeros) {
    if (!(zero > entries.front().first && zero < entries.back().first)) continue;
    const auto right = std::upper_bound(profile.mean_delta.begin(), profile.mean_delta.end(), zero);
    auto left = std::lower_bound(profile.mean_delta.begin(), profile.mean_delta.end(), zero);
    if (left == profile.mean_delta.begin() || right == profile.mean_delta.end()) continue;
    --left;
    const auto li = static_cast<std::size_t>(left - profile.mean_delta.begin());
    const auto ri = static_cast<std::size_t>(right - profile.mean_delta.begin());
    profile.crossings.push_back({zero, profile.skewness[li], profile.skewness[ri]});
  }
  return profile;
}

PlaneReport plane_report(std::span<const LabeledCurve> curves, std::size_t boundary_samples) {
  PlaneReport report;
  for (const auto& labeled : curves) {
    PlaneGroup group;
    group.dataset = labeled.dataset;
    for (const auto& row : labeled.curve.rows) {
      const double s = row.moments.skewness;
      const double k = row.moments.kurtosis;
      if (!(k > 1.0 + s * s)) {
        ++group.dropped;
        continue;
      }
      group.points.push_back({row.n, s, k, select_family(s, k)});
    }
    report.groups.push_back(std::move(group));
  }

  // Log-spaced in delta from 10 down to 0.3, i.e. ascending skewness.
  const std::size_t samples = std::max<std::size_t>(boundary_samples, 2);
  const double lo = std::log(0.3), hi = std::log(10.0);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    report.boundary.push_back(sl_boundary(std::exp(hi + t * (lo - hi))));
  }
  return report;
}

double plane_separation(const PlaneGroup& group, std::size_t single) {
  const PlanePoint* target = nullptr;
  double ms = 0.0, mk = 0.0;
  std::size_t count = 0;
  for (const auto& p : group.points) {
    if (p.n == single) {
      target = &p;
      continue;
    }
    ms += p.skewness;
    mk += p.kurtosis;
    ++count;
  }
  if (!target) throw ParameterError("group has no point with n = " + std::to_string(single));
  if (count < 3) throw InsufficientPointsError("cluster needs at least 3 points");
  ms /= static_cast<double>(count);
  mk /= static_cast<double>(count);

  double css = 0.0, ckk = 0.0, csk = 0.0;
  for (const auto& p : group.points) {
    if (p.n == single) continue;
    const double ds = p.skewness - ms, dk = p.kurtosis - mk;
    css += ds * ds;
    ckk += dk * dk;
    csk += ds * dk;
  }
  const double scale = 1.0 / static_cast<double>(count - 1);
  css *= scale;
  ckk *= scale;
  csk *= scale;
  const double det = css * ckk - csk * csk;
  if (!(det > 0.0)) throw DomainError("cluster covariance is singular");

  const double ds = target->skewness - ms, dk = target->kurtosis - mk;
  return std::sqrt((ckk * ds * ds - 2.0 * csk * ds * dk + css * dk * dk) / det);
}

DetectionResult detect_zeros_end_to_end(const ZeroSet& zeros, std::size_t n_from, std::size_t n_to,
                                        std::span<const double> reference, const DetectionConfig& config) {
  DetectionResult result;
  SweepOptions sweep_options;
  sweep_options.threads = config.threads;
  result.moments = sweep(zeros, n_from, n_to, sweep_options);
  result.variance = Curve{result.moments.means(), result.moments.variances()};
  if (result.variance.size() < 3) throw InsufficientPointsError("detection needs at least 3 offsets");

  result.window = config.smoothing_window != 0 ? config.smoothing_window
                                               : smoothing_window_for_span(result.variance, config.smoothing_span);
  result.smoothed = smooth(result.variance, result.window);
  result.second = second_derivative(result.smoothed);

  if (config.prominence >= 0.0) {
    result.prominence = config.prominence;
  } else {
    const Moments spread = chunked_moments(result.second.ys);
    result.prominence = config.prominence_factor * std::sqrt(spread.variance);
  }
  result.minima = find_local_minima(result.second, result.prominence, config.location);

  std::vector<double> inside;
  for (double z : reference)
    if (z >= result.second.xs.front() && z <= result.second.xs.back()) inside.push_back(z);
  std::sort(inside.begin(), inside.end());
  result.report = match_extrema(result.minima, inside, config.tolerance);
  return result;
}

void write_plane_csv(std::ostream& out, const PlaneReport& report) {
  out << "dataset,n,skewness,kurtosis,family\n";
  for (const auto& group : report.groups)
    for (const auto& p : group.points)
      out << group.dataset << ',' << p.n << ',' << format_number(p.skewness) << ',' << format_number(p.kurtosis)
          << ',' << family_name(p.family) << '\n';
}

void write_boundary_csv(std::ostream& out, const PlaneReport& report) {
  out << "skew_sq,kurtosis\n";
  for (const auto& b : report.boundary) out << format_number(b.skew_sq) << ',' << format_number(b.kurtosis) << '\n';
}

void write_paircorr_csv(std::ostream& out, const Curve& empirical) {
  out << "x,empirical,model\n";
  for (std::size_t i = 0; i < empirical.size(); ++i)
    out << format_number(empirical.xs[i]) << ',' << format_number(empirical.ys[i]) << ','
        << format_number(montgomery_r2(empirical.xs[i])) << '\n';
}

}  // namespace zdl
