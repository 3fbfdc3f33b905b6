#pragma once

// Johnson system of distributions. A variate x maps to a standard normal
//   z = gamma + delta * ln f(u),   u = (x - xi) / lambda,
// with f(u) = u (SL), u + sqrt(1 + u^2) (SU) or u / (1 - u) (SB).

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zdl {

enum class JohnsonFamily { SL, SU, SB };

std::string_view family_name(JohnsonFamily family);
JohnsonFamily parse_family(std::string_view name);

struct JohnsonParams {
  JohnsonFamily family = JohnsonFamily::SU;
  double gamma = 0.0;
  double delta = 1.0;   // > 0
  double xi = 0.0;
  double lambda = 1.0;  // > 0

  // Throws ParameterError.
  void validate() const;
  // Open support interval; infinities for unbounded ends.
  double support_lo() const;
  double support_hi() const;
};

double pdf(const JohnsonParams& params, double x);
double log_pdf(const JohnsonParams& params, double x);
double cdf(const JohnsonParams& params, double x);
// Throws DomainError unless 0 < p < 1.
double quantile(const JohnsonParams& params, double p);

// Quantile transform of a seeded 64-bit Mersenne Twister stream.
std::vector<double> sample(const JohnsonParams& params, std::size_t count, std::uint64_t seed);

// Point of the SL curve in the (skewness^2, kurtosis) plane for shape delta.
struct PlaneBoundaryPoint {
  double skew_sq;
  double kurtosis;
};
PlaneBoundaryPoint sl_boundary(double delta_shape);

// Kurtosis of the SL curve at the given squared skewness.
double sl_boundary_kurtosis(double skew_sq);

// Below the SL curve -> SB, above -> SU, within 1e-6 -> SL. Throws
// InfeasibleMomentsError unless kurtosis > 1 + skewness^2.
JohnsonFamily select_family(double skewness, double kurtosis);

struct JohnsonFit {
  JohnsonParams params;
  double ks_statistic = 1.0;
  double log_likelihood = 0.0;
  JohnsonParams initial;  // percentile-method start
  double initial_log_likelihood = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  int max_iterations = 2000;
  double tolerance = 1e-9;
};

// Four-percentile starting values at p = Phi(-1.5), Phi(-0.5), Phi(0.5),
// Phi(1.5). `sorted` must be ascending. SL fixes lambda = 1.
JohnsonParams percentile_fit(std::span<const double> sorted, JohnsonFamily family);

double log_likelihood(const JohnsonParams& params, std::span<const double> values);
// Kolmogorov-Smirnov distance; `sorted` must be ascending.
double ks_statistic(const JohnsonParams& params, std::span<const double> sorted);

// Family from the sample moments, percentile start, then simplex
// maximisation of the log-likelihood. Throws DegenerateSampleError for fewer
// than 100 values or zero variance. A run that hits the iteration cap comes
// back with converged == false and the best parameters seen.
JohnsonFit fit(std::span<const double> values, const FitOptions& options = {});

}  // namespace zdl
