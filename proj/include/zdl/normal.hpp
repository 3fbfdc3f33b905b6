#pragma once

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

namespace zdl {

inline double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

// Inverse of normal_cdf for p in (0, 1).
inline double normal_quantile(double p) { return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p); }

}  // namespace zdl
