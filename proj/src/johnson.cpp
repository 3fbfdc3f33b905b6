#include "zdl/johnson.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "zdl/errors.hpp"
#include "zdl/moments.hpp"
#include "zdl/nelder_mead.hpp"
#include "zdl/normal.hpp"

namespace zdl {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLogSqrtTwoPi = 0.5 * std::log(2.0 * std::numbers::pi);

// ln f(u), or NaN outside the support.
double log_transform(JohnsonFamily family, double u) {
  switch (family) {
    case JohnsonFamily::SL:
      return u > 0.0 ? std::log(u) : std::numeric_limits<double>::quiet_NaN();
    case JohnsonFamily::SU:
      return std::asinh(u);
    case JohnsonFamily::SB:
      return (u > 0.0 && u < 1.0) ? std::log(u) - std::log1p(-u) : std::numeric_limits<double>::quiet_NaN();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

// ln |f'(u) / f(u)|
double log_jacobian(JohnsonFamily family, double u) {
  switch (family) {
    case JohnsonFamily::SL:
      return -std::log(u);
    case JohnsonFamily::SU:
      return -0.5 * std::log1p(u * u);
    case JohnsonFamily::SB:
      return -std::log(u) - std::log1p(-u);
  }
  return 0.0;
}

double interpolated_quantile(std::span<const double> sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

bool usable(const JohnsonParams& p) {
  return std::isfinite(p.gamma) && std::isfinite(p.delta) && std::isfinite(p.xi) && std::isfinite(p.lambda) &&
         p.delta > 0.0 && p.lambda > 0.0;
}

// Maps between the unconstrained simplex coordinates and parameters.
// SU: (gamma, ln delta, xi, ln lambda)
// SB: (gamma, ln delta, a, b) with support (min - s e^a, max + s e^b)
// SL: (gamma, ln delta, a)    with xi = min - s e^a, lambda = 1
struct Coordinates {
  JohnsonFamily family;
  double min;
  double max;
  double scale;

  JohnsonParams to_params(std::span<const double> c) const {
    JohnsonParams p;
    p.family = family;
    p.gamma = c[0];
    p.delta = std::exp(c[1]);
    switch (family) {
      case JohnsonFamily::SU:
        p.xi = c[2];
        p.lambda = std::exp(c[3]);
        break;
      case JohnsonFamily::SB:
        p.xi = min - scale * std::exp(c[2]);
        p.lambda = max + scale * std::exp(c[3]) - p.xi;
        break;
      case JohnsonFamily::SL:
        p.xi = min - scale * std::exp(c[2]);
        p.lambda = 1.0;
        break;
    }
    return p;
  }

  std::vector<double> from_params(const JohnsonParams& p) const {
    const double floor_gap = 1e-3 * scale;
    switch (family) {
      case JohnsonFamily::SU:
        return {p.gamma, std::log(p.delta), p.xi, std::log(p.lambda)};
      case JohnsonFamily::SB: {
        const double lo_gap = std::max(min - p.xi, floor_gap);
        const double hi_gap = std::max(p.xi + p.lambda - max, floor_gap);
        return {p.gamma, std::log(p.delta), std::log(lo_gap / scale), std::log(hi_gap / scale)};
      }
      case JohnsonFamily::SL:
        return {p.gamma, std::log(p.delta), std::log(std::max(min - p.xi, floor_gap) / scale)};
    }
    return {};
  }
};

JohnsonParams fallback_start(JohnsonFamily family, std::span<const double> sorted, const Moments& m) {
  const double sd = std::sqrt(m.variance);
  const double range = sorted.back() - sorted.front();
  JohnsonParams p;
  p.family = family;
  switch (family) {
    case JohnsonFamily::SU:
      p.gamma = m.skewness > 0 ? -0.5 : (m.skewness < 0 ? 0.5 : 0.0);
      p.delta = 2.0;
      p.xi = m.mean;
      p.lambda = sd / 0.57;
      break;
    case JohnsonFamily::SB:
      p.gamma = 0.0;
      p.delta = 1.0;
      p.xi = sorted.front() - 0.05 * range;
      p.lambda = 1.1 * range;
      break;
    case JohnsonFamily::SL: {
      p.xi = sorted.front() - 0.1 * range;
      MomentAccumulator logs;
      for (double v : sorted) logs.add(std::log(v - p.xi));
      const Moments lm = logs.moments();
      p.delta = 1.0 / std::sqrt(std::max(lm.variance, 1e-12));
      p.gamma = -lm.mean * p.delta;
      p.lambda = 1.0;
      break;
    }
  }
  return p;
}

}  // namespace

std::string_view family_name(JohnsonFamily family) {
  switch (family) {
    case JohnsonFamily::SL:
      return "SL";
    case JohnsonFamily::SU:
      return "SU";
    case JohnsonFamily::SB:
      return "SB";
  }
  return "?";
}

JohnsonFamily parse_family(std::string_view name) {
  if (name == "SL") return JohnsonFamily::SL;
  if (name == "SU") return JohnsonFamily::SU;
  if (name == "SB") return JohnsonFamily::SB;
  throw ParameterError("unknown Johnson family '" + std::string(name) + "'");
}

void JohnsonParams::validate() const {
  if (!std::isfinite(gamma) || !std::isfinite(xi)) throw ParameterError("gamma and xi must be finite");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError("delta must be positive");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ParameterError("lambda must be positive");
}

double JohnsonParams::support_lo() const { return family == JohnsonFamily::SU ? -kInf : xi; }

double JohnsonParams::support_hi() const { return family == JohnsonFamily::SB ? xi + lambda : kInf; }

double log_pdf(const JohnsonParams& params, double x) {
  params.validate();
  const double u = (x - params.xi) / params.lambda;
  const double lf = log_transform(params.family, u);
  if (std::isnan(lf)) return -kInf;
  const double z = params.gamma + params.delta * lf;
  return std::log(params.delta) - std::log(params.lambda) - kLogSqrtTwoPi + log_jacobian(params.family, u) -
         0.5 * z * z;
}

double pdf(const JohnsonParams& params, double x) { return std::exp(log_pdf(params, x)); }

double cdf(const JohnsonParams& params, double x) {
  params.validate();
  if (x <= params.support_lo()) return 0.0;
  if (x >= params.support_hi()) return 1.0;
  const double u = (x - params.xi) / params.lambda;
  return normal_cdf(params.gamma + params.delta * log_transform(params.family, u));
}

double quantile(const JohnsonParams& params, double p) {
  params.validate();
  if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile needs 0 < p < 1");
  const double w = (normal_quantile(p) - params.gamma) / params.delta;
  double u = 0.0;
  switch (params.family) {
    case JohnsonFamily::SL:
      u = std::exp(w);
      break;
    case JohnsonFamily::SU:
      u = std::sinh(w);
      break;
    case JohnsonFamily::SB:
      u = 1.0 / (1.0 + std::exp(-w));
      break;
  }
  return params.xi + params.lambda * u;
}

std::vector<double> sample(const JohnsonParams& params, std::size_t count, std::uint64_t seed) {
  params.validate();
  std::mt19937_64 engine(seed);
  std::vector<double> out(count);
  for (auto& v : out) {
    // 53 random bits, offset by half a step to stay inside (0, 1).
    const double p = (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
    v = quantile(params, p);
  }
  return out;
}

PlaneBoundaryPoint sl_boundary(double delta_shape) {
  if (!(delta_shape > 0.0)) throw ParameterError("SL shape delta must be positive");
  const double w = std::exp(1.0 / (delta_shape * delta_shape));
  return {(w - 1.0) * (w + 2.0) * (w + 2.0), w * w * w * w + 2.0 * w * w * w + 3.0 * w * w - 3.0};
}

double sl_boundary_kurtosis(double skew_sq) {
  if (!(skew_sq >= 0.0)) throw ParameterError("squared skewness must be non-negative");
  // (w - 1)(w + 2)^2 = b  <=>  w^3 + 3 w^2 - (4 + b) = 0, real root >= 1.
  const double root = std::sqrt(skew_sq + 0.25 * skew_sq * skew_sq);
  const double w = std::cbrt(1.0 + 0.5 * skew_sq + root) + std::cbrt(1.0 + 0.5 * skew_sq - root) - 1.0;
  return w * w * w * w + 2.0 * w * w * w + 3.0 * w * w - 3.0;
}

JohnsonFamily select_family(double skewness, double kurtosis) {
  const double skew_sq = skewness * skewness;
  if (!std::isfinite(skewness) || !std::isfinite(kurtosis) || !(kurtosis > 1.0 + skew_sq))
    throw InfeasibleMomentsError("kurtosis must exceed 1 + skewness^2");
  const double gap = kurtosis - sl_boundary_kurtosis(skew_sq);
  if (std::abs(gap) <= 1e-6) return JohnsonFamily::SL;
  return gap < 0.0 ? JohnsonFamily::SB : JohnsonFamily::SU;
}

JohnsonParams percentile_fit(std::span<const double> sorted, JohnsonFamily family) {
  if (sorted.size() < 4) throw DegenerateSampleError("percentile fit needs at least 4 values");
  constexpr double z = 0.5;
  const double x_m3 = interpolated_quantile(sorted, normal_cdf(-3.0 * z));
  const double x_m1 = interpolated_quantile(sorted, normal_cdf(-z));
  const double x_p1 = interpolated_quantile(sorted, normal_cdf(z));
  const double x_p3 = interpolated_quantile(sorted, normal_cdf(3.0 * z));
  const double m = x_p3 - x_p1;
  const double n = x_m1 - x_m3;
  const double p = x_p1 - x_m1;
  const double mid = 0.5 * (x_p1 + x_m1);

  JohnsonParams out;
  out.family = family;
  switch (family) {
    case JohnsonFamily::SU: {
      const double mp = m / p, np = n / p;
      const double excess = mp * np - 1.0;
      out.delta = 2.0 * z / std::acosh(0.5 * (mp + np));
      out.gamma = out.delta * std::asinh((np - mp) / (2.0 * std::sqrt(excess)));
      out.lambda = 2.0 * p * std::sqrt(excess) / ((mp + np - 2.0) * std::sqrt(mp + np + 2.0));
      out.xi = mid + p * (np - mp) / (2.0 * (mp + np - 2.0));
      break;
    }
    case JohnsonFamily::SB: {
      const double pm = p / m, pn = p / n;
      const double prod = (1.0 + pm) * (1.0 + pn);
      const double excess = pm * pn - 1.0;
      out.delta = z / std::acosh(0.5 * std::sqrt(prod));
      out.gamma = out.delta * std::asinh((pn - pm) * std::sqrt(prod - 4.0) / (2.0 * excess));
      out.lambda = p * std::sqrt((prod - 2.0) * (prod - 2.0) - 4.0) / excess;
      out.xi = mid - 0.5 * out.lambda + p * (pn - pm) / (2.0 * excess);
      break;
    }
    case JohnsonFamily::SL: {
      const double mp = m / p;
      out.delta = 2.0 * z / std::log(mp);
      out.gamma = out.delta * std::log((mp - 1.0) / (p * std::sqrt(mp)));
      out.xi = mid - 0.5 * p * (mp + 1.0) / (mp - 1.0);
      out.lambda = 1.0;
      break;
    }
  }
  return out;
}

double log_likelihood(const JohnsonParams& params, std::span<const double> values) {
  params.validate();
  const double u_scale = 1.0 / params.lambda;
  const double constant = std::log(params.delta) - std::log(params.lambda) - kLogSqrtTwoPi;
  double total = 0.0;
  for (double x : values) {
    const double u = (x - params.xi) * u_scale;
    const double lf = log_transform(params.family, u);
    if (std::isnan(lf)) return -kInf;
    const double z = params.gamma + params.delta * lf;
    total += log_jacobian(params.family, u) - 0.5 * z * z;
  }
  return total + constant * static_cast<double>(values.size());
}

double ks_statistic(const JohnsonParams& params, std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(params, sorted[i]);
    worst = std::max({worst, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return std::clamp(worst, 0.0, 1.0);
}

JohnsonFit fit(std::span<const double> values, const FitOptions& options) {
  if (values.size() < 100) throw DegenerateSampleError("fit needs at least 100 values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const Moments m = chunked_moments(sorted);
  if (!(m.variance > 0.0)) throw DegenerateSampleError("fit needs a sample with nonzero variance");
  if (m.kurtosis - 1.0 - m.skewness * m.skewness < 1e-9)
    throw DegenerateSampleError("sample moments sit on the two-point bound");

  JohnsonFamily family;
  try {
    family = select_family(m.skewness, m.kurtosis);
  } catch (const InfeasibleMomentsError&) {
    throw DegenerateSampleError("sample moments sit on the two-point bound");
  }
  // The SL form only covers right-skewed data; its mirror image is not modelled.
  if (family == JohnsonFamily::SL && m.skewness < 0.0) family = JohnsonFamily::SU;

  JohnsonParams start = percentile_fit(sorted, family);
  if (!usable(start)) start = fallback_start(family, sorted, m);

  const Coordinates coords{family, sorted.front(), sorted.back(), std::sqrt(m.variance)};
  std::vector<double> c0 = coords.from_params(start);
  start = coords.to_params(c0);  // SB/SL starts are widened to cover the sample

  auto objective = [&](std::span<const double> c) {
    const JohnsonParams p = coords.to_params(c);
    if (!usable(p)) return kInf;
    return -log_likelihood(p, sorted);
  };

  std::vector<double> step(c0.size(), 0.1);
  if (family == JohnsonFamily::SU) step[2] = 0.1 * coords.scale;

  JohnsonFit result;
  result.initial = start;
  result.initial_log_likelihood = log_likelihood(start, sorted);

  const NelderMeadResult nm =
      nelder_mead(objective, c0, step, NelderMeadOptions{options.max_iterations, options.tolerance});
  result.iterations = nm.iterations;
  result.converged = nm.converged;
  const JohnsonParams refined = coords.to_params(nm.x);
  if (usable(refined) && -nm.value >= result.initial_log_likelihood) {
    result.params = refined;
    result.log_likelihood = -nm.value;
  } else {
    result.params = start;
    result.log_likelihood = result.initial_log_likelihood;
  }
  result.ks_statistic = ks_statistic(result.params, sorted);
  return result;
}

}  // namespace zdl
