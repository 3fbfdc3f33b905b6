#include "zdl/riemann_siegel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

#include "zdl/errors.hpp"

namespace zdl {
namespace {

#include "rs_coefficients.inc"

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double theta_series(double t) {
  const double r = 1.0 / t;
  const double r2 = r * r;
  const double tail = r * (1.0 / 48.0 + r2 * (7.0 / 5760.0 + r2 * (31.0 / 80640.0 + r2 * (127.0 / 430080.0))));
  return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + tail;
}

double theta_derivative(double t) { return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t * t); }

template <std::size_t N>
double horner(const std::array<double, N>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + c[i];
  return acc;
}

struct MainSumTable {
  static constexpr std::size_t kSize = 4096;
  std::array<double, kSize + 1> log_n{};
  std::array<double, kSize + 1> inv_sqrt_n{};
  MainSumTable() {
    for (std::size_t n = 1; n <= kSize; ++n) {
      log_n[n] = std::log(static_cast<double>(n));
      inv_sqrt_n[n] = 1.0 / std::sqrt(static_cast<double>(n));
    }
  }
};

const MainSumTable& main_sum_table() {
  static const MainSumTable table;
  return table;
}

// zeta(1/2 + i t) by Euler-Maclaurin summation, accurate to ~1e-13 for
// moderate t. Cost grows linearly with t.
std::complex<double> zeta_half_line(double t) {
  static constexpr std::array<double, 15> kBernoulli = {
      1.0 / 6.0,        -1.0 / 30.0,           1.0 / 42.0,        -1.0 / 30.0,
      5.0 / 66.0,       -691.0 / 2730.0,       7.0 / 6.0,         -3617.0 / 510.0,
      43867.0 / 798.0,  -174611.0 / 330.0,     854513.0 / 138.0,  -236364091.0 / 2730.0,
      8553103.0 / 6.0,  -23749461029.0 / 870.0, 8615841276005.0 / 14322.0};
  const std::complex<double> s(0.5, t);
  const auto terms = static_cast<int>(t / 2.0) + 20;
  const double big_n = terms;

  auto power = [&](double n) { return std::exp(-s * std::log(n)); };  // n^-s
  std::complex<double> sum = 0.0;
  for (int n = 1; n < terms; ++n) sum += power(n);
  const std::complex<double> n_pow = power(big_n);
  sum += n_pow * big_n / (s - 1.0) + 0.5 * n_pow;

  // B_2k / (2k)! * s (s+1) ... (s+2k-2) * N^(-s-2k+1)
  std::complex<double> rising = s;
  std::complex<double> scale = n_pow / big_n;
  double factorial = 2.0;
  for (std::size_t k = 1; k <= kBernoulli.size(); ++k) {
    const std::complex<double> term = kBernoulli[k - 1] / factorial * rising * scale;
    sum += term;
    if (std::abs(term) < 1e-17) break;
    rising *= (s + static_cast<double>(2 * k - 1)) * (s + static_cast<double>(2 * k));
    scale /= big_n * big_n;
    factorial *= static_cast<double>((2 * k + 1) * (2 * k + 2));
  }
  return sum;
}

struct Sample {
  double t;
  double z;
};

bool sign_change(const Sample& a, const Sample& b) { return std::signbit(a.z) != std::signbit(b.z); }

double refine_bracket(Sample lo, Sample hi) {
  constexpr double kWidth = 1e-9;
  int side = 0;
  double estimate = 0.5 * (lo.t + hi.t);
  for (int iter = 0; iter < 200 && hi.t - lo.t > kWidth; ++iter) {
    double x = (lo.t * hi.z - hi.t * lo.z) / (hi.z - lo.z);
    if (!(x > lo.t && x < hi.t)) x = 0.5 * (lo.t + hi.t);
    // Keep the bracket shrinking from both ends once the secant stalls.
    if (iter % 8 == 7) x = 0.5 * (lo.t + hi.t);
    estimate = x;
    const double zx = hardy_z(x);
    if (zx == 0.0) return x;
    if (std::signbit(zx) == std::signbit(lo.z)) {
      lo = {x, zx};
      if (side == -1) hi.z *= 0.5;
      side = -1;
    } else {
      hi = {x, zx};
      if (side == 1) lo.z *= 0.5;
      side = 1;
    }
  }
  if (hi.t - lo.t <= kWidth) return 0.5 * (lo.t + hi.t);
  return estimate;
}

// Sign-change brackets between two good Gram points, which hold exactly
// `expected` zeros.
std::vector<std::pair<Sample, Sample>> scan_block(std::vector<Sample> pts, std::int64_t expected,
                                                  int max_depth) {
  constexpr std::size_t kMaxPoints = 2'000'000;
  for (int depth = 0;; ++depth) {
    std::int64_t found = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) found += sign_change(pts[i - 1], pts[i]);
    if (found == expected) break;
    if (found > expected)
      throw IncompleteScanError("Gram block near t=" + std::to_string(pts.front().t) +
                                " holds more sign changes than the counting estimate");
    if (depth == max_depth || pts.size() * 3 > kMaxPoints)
      throw IncompleteScanError("missed zeros in Gram block near t=" + std::to_string(pts.front().t) +
                                " after " + std::to_string(depth) + " subdivisions");
    std::vector<Sample> finer;
    finer.reserve(pts.size() * 3);
    finer.push_back(pts.front());
    // An interval with one sign change may still hide a further pair, so
    // every interval is trisected.
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double h = (pts[i].t - pts[i - 1].t) / 3.0;
      for (int j = 1; j <= 2; ++j) {
        const double t = pts[i - 1].t + j * h;
        finer.push_back({t, hardy_z(t)});
      }
      finer.push_back(pts[i]);
    }
    pts = std::move(finer);
  }
  std::vector<std::pair<Sample, Sample>> brackets;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (sign_change(pts[i - 1], pts[i])) brackets.emplace_back(pts[i - 1], pts[i]);
  return brackets;
}

}  // namespace

double hardy_z(double t) {
  if (t >= kEulerMaclaurinBelow) return riemann_siegel_z(t);
  if (!(t >= 10.0)) throw DomainError("hardy_z needs t >= 10");
  const std::complex<double> rotated = std::polar(1.0, theta_series(t)) * zeta_half_line(t);
  return rotated.real();
}

double riemann_siegel_theta(double t) {
  if (!(t > 10.0)) throw DomainError("riemann_siegel_theta needs t > 10");
  return theta_series(t);
}

double riemann_siegel_z(double t) {
  if (!(t >= 10.0)) throw DomainError("riemann_siegel_z needs t >= 10");
  const double a = std::sqrt(t / kTwoPi);
  const auto terms = static_cast<std::size_t>(a);
  const double p = a - static_cast<double>(terms);
  const double theta = theta_series(t);

  const auto& table = main_sum_table();
  double sum = 0.0;
  for (std::size_t n = 1; n <= terms; ++n) {
    if (n <= MainSumTable::kSize) {
      sum += std::cos(theta - t * table.log_n[n]) * table.inv_sqrt_n[n];
    } else {
      const double dn = static_cast<double>(n);
      sum += std::cos(theta - t * std::log(dn)) / std::sqrt(dn);
    }
  }
  sum *= 2.0;

  const double x = p - 0.5;
  const double w = 1.0 / a;  // sqrt(2 pi / t)
  double remainder =
      horner(kC0, x) + w * (horner(kC1, x) + w * (horner(kC2, x) + w * (horner(kC3, x) + w * horner(kC4, x))));
  remainder *= std::sqrt(w);
  if (terms % 2 == 0) remainder = -remainder;
  return sum + remainder;
}

double gram_point(std::int64_t k) {
  if (k < 0) throw ParameterError("gram_point needs k >= 0");
  const double target = static_cast<double>(k) * kPi;
  double lo = 10.0;
  double hi = 20.0;
  while (theta_series(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 100; ++iter) {
    const double f = theta_series(t) - target;
    if (f < 0) lo = t; else hi = t;
    double next = t - f / theta_derivative(t);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) < 1e-12 * std::max(1.0, t)) return next;
    t = next;
  }
  return t;
}

std::int64_t zero_count_estimate(double t) {
  return static_cast<std::int64_t>(std::floor(riemann_siegel_theta(t) / kPi)) + 1;
}

ZeroSet compute_zeros(std::uint64_t count, std::uint64_t start_index, const ZeroScanOptions& options) {
  if (count == 0) throw ParameterError("count must be positive");
  if (start_index == 0) throw ParameterError("zero indices start at 1");
  if (start_index > kMaxComputedIndex || count > kMaxComputedIndex - start_index + 1)
    throw ParameterError("zero index range exceeds " + std::to_string(kMaxComputedIndex));
  if (options.max_depth < 0) throw ParameterError("max_depth must be non-negative");

  const auto first = static_cast<std::int64_t>(start_index);
  const auto last = first + static_cast<std::int64_t>(count) - 1;

  // Gram index -1 stands for t = 10, below the first zero, where Z < 0.
  auto gram_t = [](std::int64_t k) { return k < 0 ? 10.0 : gram_point(k); };
  auto good = [](std::int64_t k, double z) { return (k % 2 == 0) ? z > 0 : z < 0; };

  std::int64_t lo_k = std::max<std::int64_t>(first - 3, -1);
  while (lo_k >= 0 && !good(lo_k, hardy_z(gram_t(lo_k)))) --lo_k;
  std::int64_t hi_k = last;
  while (!good(hi_k, hardy_z(gram_t(hi_k)))) ++hi_k;

  // Sample Z at every Gram point of the range.
  std::vector<Sample> gram;
  gram.reserve(static_cast<std::size_t>(hi_k - lo_k + 1));
  double t = gram_t(lo_k);
  for (std::int64_t k = lo_k; k <= hi_k; ++k) {
    if (k >= 0) {
      const double target = static_cast<double>(k) * kPi;
      if (k == 0 || gram.empty()) t = gram_point(k);
      for (int iter = 0; iter < 4; ++iter) t -= (theta_series(t) - target) / theta_derivative(t);
    }
    gram.push_back({t, hardy_z(t)});
    if (k >= 0) t += kPi / theta_derivative(t);
  }

  // Blocks between consecutive good Gram points.
  struct Block {
    std::size_t from;
    std::size_t to;
    std::int64_t first_zero;  // number of the first zero inside
  };
  std::vector<Block> blocks;
  std::size_t prev = 0;
  for (std::size_t i = 1; i < gram.size(); ++i) {
    const std::int64_t k = lo_k + static_cast<std::int64_t>(i);
    if (good(k, gram[i].z)) {
      const std::int64_t first_zero = lo_k + static_cast<std::int64_t>(prev) + 2;
      if (first_zero + static_cast<std::int64_t>(i - prev) > first && first_zero <= last)
        blocks.push_back({prev, i, first_zero});
      prev = i;
    }
  }

  std::vector<std::vector<double>> found(blocks.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t b = begin; b < end; ++b) {
      const Block& block = blocks[b];
      std::vector<Sample> pts(gram.begin() + static_cast<std::ptrdiff_t>(block.from),
                              gram.begin() + static_cast<std::ptrdiff_t>(block.to) + 1);
      const auto expected = static_cast<std::int64_t>(block.to - block.from);
      auto brackets = scan_block(std::move(pts), expected, options.max_depth);
      for (std::size_t j = 0; j < brackets.size(); ++j) {
        const std::int64_t number = block.first_zero + static_cast<std::int64_t>(j);
        if (number < first || number > last) continue;
        found[b].push_back(refine_bracket(brackets[j].first, brackets[j].second));
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(blocks.size(), 1));
  if (workers == 1) {
    work(0, blocks.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t per = (blocks.size() + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(blocks.size(), w * per);
      const std::size_t end = std::min(blocks.size(), begin + per);
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  ZeroSet zeros;
  zeros.start_index = Ordinal(start_index);
  zeros.offsets.reserve(count);
  for (const auto& block_zeros : found) zeros.offsets.insert(zeros.offsets.end(), block_zeros.begin(), block_zeros.end());
  if (zeros.offsets.size() != count)
    throw IncompleteScanError("found " + std::to_string(zeros.offsets.size()) + " zeros, expected " +
                              std::to_string(count));
  zeros.validate();
  return zeros;
}

}  // namespace zdl
