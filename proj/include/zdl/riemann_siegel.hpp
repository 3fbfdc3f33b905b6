#pragma once

// Local computation of zeta zeros on the critical line with the
// Riemann-Siegel Z function.

#include <cstdint>

#include "zdl/zero_source.hpp"

namespace zdl {

// Highest zero index compute_zeros will produce. Past this the main sum
// gets too long for desk-scale runtimes; accuracy is not the limit.
inline constexpr std::uint64_t kMaxComputedIndex = 100'000'000;

// Asymptotic theta(t); requires t > 10.
double riemann_siegel_theta(double t);

// Z(t) = exp(i theta(t)) zeta(1/2 + i t); requires t >= 10. Uses the main
// sum plus the remainder corrections C0..C4.
double riemann_siegel_z(double t);

// Below this height hardy_z sums zeta directly instead of using the
// Riemann-Siegel remainder, whose truncation error is largest there.
inline constexpr double kEulerMaclaurinBelow = 200.0;

// Z(t) at full double accuracy for all t >= 10; this is what the zero
// finder evaluates.
double hardy_z(double t);

// Solution of theta(g) = k pi.
double gram_point(std::int64_t k);

// floor(theta(T) / pi) + 1, the smooth zero count below T.
std::int64_t zero_count_estimate(double t);

struct ZeroScanOptions {
  int max_depth = 20;     // trisection levels allowed inside a Gram block
  unsigned threads = 1;
};

// Zeros number start_index .. start_index + count - 1, ascending.
// Throws ParameterError on a bad range and IncompleteScanError when a Gram
// block keeps missing zeros after max_depth subdivisions.
ZeroSet compute_zeros(std::uint64_t count, std::uint64_t start_index = 1,
                      const ZeroScanOptions& options = {});

}  // namespace zdl
