#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace zdl {

// Sample moments. Variance is unbiased; skewness and kurtosis are the
// standardized central moments m3/m2^1.5 and m4/m2^2 (normal = 3).
// A zero-variance sample reports skewness 0 and kurtosis 3.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 3.0;
};

// One-pass central-moment accumulator with an exact pairwise merge
// (Terriberry / Pebay update formulas).
class MomentAccumulator {
 public:
  void add(double x);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return n_; }
  Moments moments() const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  double m3_ = 0.0;
  double m4_ = 0.0;
};

inline constexpr std::size_t kDefaultChunk = 4096;

// Accumulates each chunk of `chunk` consecutive values separately and merges
// the partial states left to right, so the result is bit-reproducible for a
// given chunk size.
Moments chunked_moments(std::span<const double> values, std::size_t chunk = kDefaultChunk);

}  // namespace zdl
