#pragma once

// Differences of zero ordinates at a fixed index offset n,
//   delta_n(i) = gamma(i + n) - gamma(i),
// and their per-n distributions over a window of starting indices i.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "zdl/moments.hpp"
#include "zdl/zero_source.hpp"

namespace zdl {

inline constexpr std::size_t kDefaultBins = 200;

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;

  double bin_width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double edge(std::size_t i) const { return lo + bin_width() * static_cast<double>(i); }
  double center(std::size_t i) const { return lo + bin_width() * (static_cast<double>(i) + 0.5); }
};

struct DeltaDistribution {
  std::size_t n = 0;
  std::uint64_t values_count = 0;
  Histogram histogram;
  Moments moments;  // from the raw values, not the bins
};

// Throws OffsetTooLargeError when n >= zeros.size() and ParameterError for n == 0.
std::vector<double> compute_deltas(const ZeroSet& zeros, std::size_t n);

// Equal-width bins over [min, max]; a constant sample gets one unit-wide
// bin range centred on the value. Throws EmptyInputError, ParameterError
// when bin_count < 10.
DeltaDistribution accumulate_distribution(std::span<const double> deltas, std::size_t bin_count = kDefaultBins,
                                          std::size_t n = 0);

struct MomentRow {
  std::size_t n = 0;
  Moments moments;
};

// One row per n, ascending.
struct MomentCurve {
  std::vector<MomentRow> rows;

  std::size_t size() const { return rows.size(); }
  std::vector<double> means() const;
  std::vector<double> variances() const;
};

struct SweepOptions {
  std::size_t chunk = kDefaultChunk;
  unsigned threads = 1;
};

// Moments of delta_n for every n in [n_from, n_to], streamed without
// materialising the deltas.
MomentCurve sweep(const ZeroSet& zeros, std::size_t n_from, std::size_t n_to, const SweepOptions& options = {});

// `n,mean,variance,skewness,kurtosis,count`
void write_moment_curve_csv(std::ostream& out, const MomentCurve& curve);
MomentCurve read_moment_curve_csv(std::istream& in);

}  // namespace zdl
