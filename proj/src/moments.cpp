#include "zdl/moments.hpp"

#include <algorithm>
#include <cmath>

#include "zdl/errors.hpp"

namespace zdl {

void MomentAccumulator::add(double x) {
  const double n1 = static_cast<double>(n_);
  ++n_;
  const double n = static_cast<double>(n_);
  const double delta = x - mean_;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean_ += delta_n;
  m4_ += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2_ - 4.0 * delta_n * m3_;
  m3_ += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2_;
  m2_ += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  const double delta2 = delta * delta;
  const double delta3 = delta * delta2;
  const double delta4 = delta2 * delta2;

  const double m2 = m2_ + other.m2_ + delta2 * na * nb / n;
  const double m3 = m3_ + other.m3_ + delta3 * na * nb * (na - nb) / (n * n) +
                    3.0 * delta * (na * other.m2_ - nb * m2_) / n;
  const double m4 = m4_ + other.m4_ + delta4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                    6.0 * delta2 * (na * na * other.m2_ + nb * nb * m2_) / (n * n) +
                    4.0 * delta * (na * other.m3_ - nb * m3_) / n;

  mean_ += delta * nb / n;
  m2_ = m2;
  m3_ = m3;
  m4_ = m4;
  n_ += other.n_;
}

Moments MomentAccumulator::moments() const {
  Moments out;
  out.count = n_;
  out.mean = mean_;
  if (n_ < 2 || !(m2_ > 0.0)) return out;
  const double n = static_cast<double>(n_);
  out.variance = m2_ / (n - 1.0);
  // Relative to the mean's magnitude the spread is at rounding level.
  if (m2_ / n <= 1e-28 * std::max(1.0, mean_ * mean_)) {
    out.variance = 0.0;
    return out;
  }
  out.skewness = std::sqrt(n) * m3_ / std::pow(m2_, 1.5);
  out.kurtosis = n * m4_ / (m2_ * m2_);
  return out;
}

Moments chunked_moments(std::span<const double> values, std::size_t chunk) {
  if (chunk == 0) throw ParameterError("chunk size must be positive");
  MomentAccumulator total;
  for (std::size_t begin = 0; begin < values.size(); begin += chunk) {
    const std::size_t end = std::min(values.size(), begin + chunk);
    MomentAccumulator part;
    for (std::size_t i = begin; i < end; ++i) part.add(values[i]);
    total.merge(part);
  }
  return total.moments();
}

}  // namespace zdl
