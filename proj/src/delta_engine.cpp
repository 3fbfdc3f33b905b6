#include "zdl/delta_engine.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>

#include "zdl/csv.hpp"
#include "zdl/errors.hpp"

namespace zdl {
namespace {

void check_offset(const ZeroSet& zeros, std::size_t n) {
  if (n == 0) throw ParameterError("offset n must be positive");
  if (n >= zeros.size())
    throw OffsetTooLargeError("offset " + std::to_string(n) + " needs more than " + std::to_string(zeros.size()) +
                              " zeros");
}

Moments offset_moments(std::span<const double> offsets, std::size_t n, std::size_t chunk) {
  const std::size_t count = offsets.size() - n;
  MomentAccumulator total;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    MomentAccumulator part;
    for (std::size_t i = begin; i < end; ++i) part.add(offsets[i + n] - offsets[i]);
    total.merge(part);
  }
  return total.moments();
}

}  // namespace

std::vector<double> compute_deltas(const ZeroSet& zeros, std::size_t n) {
  check_offset(zeros, n);
  const auto& x = zeros.offsets;
  std::vector<double> out(x.size() - n);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i + n] - x[i];
  return out;
}

DeltaDistribution accumulate_distribution(std::span<const double> deltas, std::size_t bin_count, std::size_t n) {
  if (deltas.empty()) throw EmptyInputError("no delta values");
  if (bin_count < 10) throw ParameterError("bin_count must be at least 10");

  DeltaDistribution dist;
  dist.n = n;
  dist.values_count = deltas.size();
  dist.moments = chunked_moments(deltas);

  const auto [min_it, max_it] = std::minmax_element(deltas.begin(), deltas.end());
  Histogram& h = dist.histogram;
  h.lo = *min_it;
  h.hi = *max_it;
  if (!(h.hi > h.lo)) {
    h.lo -= 0.5;
    h.hi += 0.5;
  }
  h.counts.assign(bin_count, 0);
  const double scale = static_cast<double>(bin_count) / (h.hi - h.lo);
  for (double v : deltas) {
    const auto bin = static_cast<std::size_t>(std::max(0.0, (v - h.lo) * scale));
    ++h.counts[std::min(bin, bin_count - 1)];
  }
  return dist;
}

std::vector<double> MomentCurve::means() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.moments.mean);
  return out;
}

std::vector<double> MomentCurve::variances() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.moments.variance);
  return out;
}

MomentCurve sweep(const ZeroSet& zeros, std::size_t n_from, std::size_t n_to, const SweepOptions& options) {
  if (n_from == 0 || n_from > n_to) throw ParameterError("sweep needs 1 <= n_from <= n_to");
  if (options.chunk == 0) throw ParameterError("chunk size must be positive");
  check_offset(zeros, n_to);

  MomentCurve curve;
  curve.rows.resize(n_to - n_from + 1);
  const std::span<const double> offsets = zeros.view();
  auto work = [&](std::size_t worker, std::size_t stride) {
    for (std::size_t k = worker; k < curve.rows.size(); k += stride) {
      const std::size_t n = n_from + k;
      curve.rows[k] = {n, offset_moments(offsets, n, options.chunk)};
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, curve.rows.size());
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w, workers);
    for (auto& th : pool) th.join();
  }
  return curve;
}

void write_moment_curve_csv(std::ostream& out, const MomentCurve& curve) {
  out << "n,mean,variance,skewness,kurtosis,count\n";
  for (const auto& row : curve.rows) {
    const Moments& m = row.moments;
    out << row.n << ',' << format_number(m.mean) << ',' << format_number(m.variance) << ','
        << format_number(m.skewness) << ',' << format_number(m.kurtosis) << ',' << m.count << '\n';
  }
}

MomentCurve read_moment_curve_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line.rfind("n,mean,variance,skewness,kurtosis,count", 0) != 0)
    throw FormatError("expected moments CSV header", line_no);
  MomentCurve curve;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell[6];
    for (auto& c : cell)
      if (!std::getline(fields, c, ',')) throw FormatError("expected 6 fields", line_no);
    try {
      MomentRow row;
      row.n = std::stoul(cell[0]);
      row.moments.mean = std::stod(cell[1]);
      row.moments.variance = std::stod(cell[2]);
      row.moments.skewness = std::stod(cell[3]);
      row.moments.kurtosis = std::stod(cell[4]);
      row.moments.count = std::stoull(cell[5]);
      curve.rows.push_back(row);
    } catch (const std::logic_error&) {
      throw FormatError("unparsable number", line_no);
    }
  }
  return curve;
}

}  // namespace zdl
