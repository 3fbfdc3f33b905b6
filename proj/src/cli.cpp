#include "zdl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "zdl/analysis.hpp"
#include "zdl/csv.hpp"
#include "zdl/delta_engine.hpp"
#include "zdl/errors.hpp"
#include "zdl/johnson.hpp"
#include "zdl/riemann_siegel.hpp"
#include "zdl/stats.hpp"
#include "zdl/svg.hpp"
#include "zdl/zero_source.hpp"

namespace zdl {
namespace {

namespace fs = std::filesystem;

struct Settings {
  std::string input;
  std::string format = "plain";
  std::uint64_t start_index = 1;
  std::uint64_t window_start = 1000000;
  std::uint64_t window = 100000;
  std::size_t n_from = 1;
  std::size_t n_to = 999;
  std::size_t bins = kDefaultBins;
  std::string smooth = "auto";
  std::string prominence = "auto";
  double tolerance = 0.1;
  std::string out_dir;
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // compute-zeros
  std::uint64_t count = 0;
  std::string out;
  // sweep
  std::vector<std::size_t> histograms;
  // detect
  std::string reference;
  std::size_t max_unmatched = 0;
  // fit
  double ks_max = 0.02;
  std::vector<std::size_t> overlay;
  std::string sample;
  std::string synthetic;
  std::size_t sample_size = 100000;
  // plane
  std::vector<std::string> moments;
  std::string label = "run";
  // paircorr
  double max_x = 3.0;
  double bin_width = 0.05;
};

void add_common(CLI::App* cmd, Settings& s) {
  cmd->add_option("--input", s.input, "zero file; zeros are computed when omitted");
  cmd->add_option("--format", s.format, "zero file layout")
      ->check(CLI::IsMember({"plain", "plain_list", "base-offset", "base_offset"}));
  cmd->add_option("--start-index", s.window_start, "index of the first computed zero")->check(CLI::PositiveNumber);
  cmd->add_option("--window", s.window, "number of zeros to compute or to keep from --input")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--n-from", s.n_from, "first offset n")->check(CLI::PositiveNumber);
  cmd->add_option("--n-to", s.n_to, "last offset n")->check(CLI::PositiveNumber);
  cmd->add_option("--bins", s.bins, "histogram bins")->check(CLI::PositiveNumber);
  cmd->add_option("--smooth", s.smooth, "odd moving-average window or 'auto'");
  cmd->add_option("--prominence", s.prominence, "minimum prominence or 'auto'");
  cmd->add_option("--tolerance", s.tolerance, "match tolerance in ordinate units")->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", s.out_dir, "output directory (default $ZDL_OUT_DIR or .)");
  cmd->add_option("--seed", s.seed, "random seed");
  cmd->add_option("--threads", s.threads, "worker threads")->check(CLI::PositiveNumber);
}

// key=value lines; '#' starts a comment.
std::vector<std::string> config_arguments(const std::string& path, const CLI::App& cmd) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  std::vector<std::string> args;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string text) {
    const auto first = text.find_first_not_of(" \t\r");
    if (first == std::string::npos) return std::string();
    const auto last = text.find_last_not_of(" \t\r");
    return text.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParameterError(path + ":" + std::to_string(line_no) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config" || cmd.get_option_no_throw("--" + key) == nullptr)
      throw ParameterError(path + ":" + std::to_string(line_no) + ": unknown key '" + key + "'");
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

fs::path output_dir(const Settings& s) {
  fs::path dir = s.out_dir;
  if (dir.empty()) {
    const char* env = std::getenv("ZDL_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

ZeroSet acquire_zeros(const Settings& s, bool window_given, std::ostream& err) {
  if (!s.input.empty()) {
    ZeroSet zeros = read_zero_file(s.input, parse_format_name(s.format));
    if (window_given && zeros.size() > s.window) zeros.offsets.resize(s.window);
    err << "read " << zeros.size() << " zeros from " << s.input << '\n';
    return zeros;
  }
  err << "computing " << s.window << " zeros from index " << s.window_start << '\n';
  ZeroScanOptions options;
  options.threads = s.threads;
  return compute_zeros(s.window, s.window_start, options);
}

void check_range(const Settings& s, const ZeroSet& zeros) {
  if (s.n_from > s.n_to) throw ParameterError("--n-from exceeds --n-to");
  if (s.n_to >= zeros.size())
    throw ParameterError("--n-to must be below the number of zeros (" + std::to_string(zeros.size()) + ")");
}

// Ordinates of the lowest zeros, up to `hi`.
std::vector<double> low_zeros_up_to(double hi, unsigned threads) {
  std::vector<double> out;
  if (!(hi > 14.0)) return out;
  const auto estimate = zero_count_estimate(hi);
  ZeroScanOptions options;
  options.threads = threads;
  const ZeroSet zeros = compute_zeros(static_cast<std::uint64_t>(estimate + 3), 1, options);
  for (std::size_t i = 0; i < zeros.size(); ++i)
    if (zeros.ordinate(i) <= hi) out.push_back(zeros.ordinate(i));
  return out;
}

std::string histogram_csv(const DeltaDistribution& dist) {
  std::ostringstream out;
  out << "lo,hi,count\n";
  for (std::size_t i = 0; i < dist.histogram.counts.size(); ++i)
    out << format_number(dist.histogram.edge(i)) << ',' << format_number(dist.histogram.edge(i + 1)) << ','
        << dist.histogram.counts[i] << '\n';
  return out.str();
}

int cmd_compute_zeros(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.count == 0) throw ParameterError("--count must be positive");
  const auto format = parse_format_name(s.format);
  const fs::path path = s.out.empty() ? output_dir(s) / "zeros.txt" : fs::path(s.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());

  err << "computing " << s.count << " zeros from index " << s.start_index << '\n';
  const auto started = std::chrono::steady_clock::now();
  ZeroScanOptions options;
  options.threads = s.threads;
  const ZeroSet zeros = compute_zeros(s.count, s.start_index, options);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  err << "done in " << seconds << " s\n";

  std::ostringstream text;
  write_zeros(text, zeros, format);
  write_file(path, text.str());
  out << "wrote " << zeros.size() << " zeros to " << path.string() << '\n';
  return kExitOk;
}

int cmd_sweep(const Settings& s, bool window_given, std::ostream& out, std::ostream& err) {
  const ZeroSet zeros = acquire_zeros(s, window_given, err);
  check_range(s, zeros);
  const fs::path dir = output_dir(s);

  SweepOptions options;
  options.threads = s.threads;
  const MomentCurve curve = sweep(zeros, s.n_from, s.n_to, options);
  std::ostringstream csv;
  write_moment_curve_csv(csv, curve);
  write_file(dir / "moments.csv", csv.str());

  for (std::size_t n : s.histograms) {
    const auto deltas = compute_deltas(zeros, n);
    write_file(dir / ("hist_n" + std::to_string(n) + ".csv"), histogram_csv(accumulate_distribution(deltas, s.bins, n)));
  }
  out << "wrote " << curve.size() << " rows to " << (dir / "moments.csv").string() << '\n';
  return kExitOk;
}

DetectionConfig detection_config(const Settings& s) {
  DetectionConfig config;
  config.tolerance = s.tolerance;
  config.threads = s.threads;
  if (s.smooth != "auto") {
    std::size_t pos = 0;
    long long window = 0;
    try {
      window = std::stoll(s.smooth, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.smooth.size() || window <= 0 || window % 2 == 0)
      throw ParameterError("--smooth must be 'auto' or a positive odd integer");
    config.smoothing_window = static_cast<std::size_t>(window);
  }
  if (s.prominence != "auto") {
    std::size_t pos = 0;
    double value = -1.0;
    try {
      value = std::stod(s.prominence, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.prominence.size() || !(value > 0.0) || !std::isfinite(value))
      throw ParameterError("--prominence must be 'auto' or a positive number");
    config.prominence = value;
  }
  return config;
}

int cmd_detect(const Settings& s, bool window_given, std::ostream& out, std::ostream& err) {
  const DetectionConfig config = detection_config(s);
  const ZeroSet zeros = acquire_zeros(s, window_given, err);
  check_range(s, zeros);
  const fs::path dir = output_dir(s);

  SweepOptions options;
  options.threads = s.threads;
  const MomentCurve probe = sweep(zeros, s.n_to, s.n_to, options);
  std::vector<double> reference;
  if (!s.reference.empty()) {
    const ZeroSet ref = read_zero_file(s.reference, ZeroFileFormat::plain_list);
    for (std::size_t i = 0; i < ref.size(); ++i) reference.push_back(ref.ordinate(i));
  } else {
    reference = low_zeros_up_to(probe.rows.front().moments.mean, s.threads);
  }

  const DetectionResult result = detect_zeros_end_to_end(zeros, s.n_from, s.n_to, reference, config);
  std::ostringstream csv;
  write_detection_csv(csv, result.report);
  write_file(dir / "detection.csv", csv.str());

  std::vector<double> inside;
  for (const auto& m : result.report.matches) inside.push_back(m.reference);
  inside.insert(inside.end(), result.report.unmatched_reference.begin(), result.report.unmatched_reference.end());
  std::sort(inside.begin(), inside.end());

  std::vector<svg::Panel> panels(2);
  panels[0].title = "variance of delta(n)";
  panels[0].x_label = "mean delta(n)";
  panels[0].y_label = "variance";
  panels[0].series.push_back({result.variance.xs, result.variance.ys, "#1f77b4", svg::Style::line, "variance"});
  if (result.window > 1)
    panels[0].series.push_back(
        {result.smoothed.xs, result.smoothed.ys, "#ff7f0e", svg::Style::line, "smoothed, window " +
                                                                                 std::to_string(result.window)});
  panels[0].vertical_lines = inside;
  panels[1].title = "second derivative";
  panels[1].x_label = "mean delta(n)";
  panels[1].y_label = "d2 variance";
  panels[1].series.push_back({result.second.xs, result.second.ys, "#2ca02c", svg::Style::line, ""});
  panels[1].series.push_back(
      {result.minima.minima_x, std::vector<double>(result.minima.minima_x.size(), 0.0), "#000", svg::Style::points,
       "detected minima"});
  for (std::size_t i = 0; i < result.minima.minima_x.size(); ++i) {
    const auto& xs = result.second.xs;
    const auto it = std::lower_bound(xs.begin(), xs.end(), result.minima.minima_x[i]);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
    panels[1].series.back().ys[i] = result.second.ys[idx];
  }
  panels[1].vertical_lines = inside;
  write_file(dir / "variance.svg", svg::render(panels));

  out << "window " << result.window << ", prominence " << format_number(result.prominence) << ", matched "
      << result.report.matches.size() << ", unmatched_detected " << result.report.unmatched_detected.size()
      << ", unmatched_reference " << result.report.unmatched_reference.size() << '\n';
  if (result.report.unmatched_reference.size() > s.max_unmatched) {
    err << "unmatched reference zeros (" << result.report.unmatched_reference.size() << ") exceed the limit of "
        << s.max_unmatched << '\n';
    return kExitUnmatched;
  }
  return kExitOk;
}

JohnsonParams parse_synthetic(const std::string& text) {
  // FAMILY:gamma,delta,xi,lambda
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParameterError("--synthetic expects FAMILY:gamma,delta,xi,lambda");
  JohnsonParams params;
  params.family = parse_family(text.substr(0, colon));
  std::vector<double> values;
  std::stringstream fields(text.substr(colon + 1));
  std::string field;
  while (std::getline(fields, field, ',')) {
    try {
      values.push_back(std::stod(field));
    } catch (const std::exception&) {
      throw ParameterError("bad number '" + field + "' in --synthetic");
    }
  }
  if (values.size() != 4) throw ParameterError("--synthetic expects four parameters");
  params.gamma = values[0];
  params.delta = values[1];
  params.xi = values[2];
  params.lambda = values[3];
  params.validate();
  return params;
}

std::vector<double> read_sample(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::size_t pos = 0;
    double value = 0.0;
    try {
      value = std::stod(line.substr(first), &pos);
    } catch (const std::exception&) {
      throw FormatError("unparsable value", line_no);
    }
    if (!std::isfinite(value)) throw FormatError("non-finite value", line_no);
    values.push_back(value);
  }
  return values;
}

std::string overlay_svg(const std::vector<double>& values, const JohnsonFit& fitted, std::size_t bins,
                        const std::string& title) {
  const DeltaDistribution dist = accumulate_distribution(values, bins);
  const double width = dist.histogram.bin_width();
  const double total = static_cast<double>(dist.values_count);
  svg::Series hist{{}, {}, "#7f7f7f", svg::Style::steps, "histogram"};
  for (std::size_t i = 0; i < dist.histogram.counts.size(); ++i) {
    const double density = static_cast<double>(dist.histogram.counts[i]) / (total * width);
    hist.xs.push_back(dist.histogram.edge(i));
    hist.ys.push_back(density);
    hist.xs.push_back(dist.histogram.edge(i + 1));
    hist.ys.push_back(density);
  }
  svg::Series model{{}, {}, "#d62728", svg::Style::line, std::string("Johnson ") +
                                                            std::string(family_name(fitted.params.family))};
  const int samples = 400;
  for (int i = 0; i <= samples; ++i) {
    const double x = dist.histogram.lo + (dist.histogram.hi - dist.histogram.lo) * i / samples;
    model.xs.push_back(x);
    model.ys.push_back(pdf(fitted.params, x));
  }
  svg::Panel panel;
  panel.title = title + ", ks " + format_number(fitted.ks_statistic);
  panel.x_label = "value";
  panel.y_label = "density";
  panel.series = {hist, model};
  return svg::render(std::span<const svg::Panel>(&panel, 1));
}

void write_fit_row(std::ostream& out, std::size_t n, const JohnsonFit& f) {
  out << n << ',' << family_name(f.params.family) << ',' << format_number(f.params.gamma) << ','
      << format_number(f.params.delta) << ',' << format_number(f.params.xi) << ',' << format_number(f.params.lambda)
      << ',' << format_number(f.ks_statistic) << '\n';
}

int cmd_fit(const Settings& s, bool window_given, std::ostream& out, std::ostream& err) {
  if (!(s.ks_max >= 0.0)) throw ParameterError("--ks-max must be non-negative");
  if (!s.sample.empty() && !s.synthetic.empty()) throw ParameterError("--sample and --synthetic are exclusive");

  std::ostringstream csv;
  csv << "n,family,gamma,delta,xi,lambda,ks\n";
  double worst = 0.0;
  std::size_t rows = 0;
  const fs::path dir = output_dir(s);

  if (!s.sample.empty() || !s.synthetic.empty()) {
    const std::vector<double> values =
        !s.sample.empty() ? read_sample(s.sample) : sample(parse_synthetic(s.synthetic), s.sample_size, s.seed);
    const JohnsonFit f = fit(values);
    write_fit_row(csv, 0, f);
    worst = f.ks_statistic;
    rows = 1;
    write_file(dir / "fit_sample.svg", overlay_svg(values, f, s.bins, "sample"));
  } else {
    const ZeroSet zeros = acquire_zeros(s, window_given, err);
    check_range(s, zeros);
    for (std::size_t n = s.n_from; n <= s.n_to; ++n) {
      const auto deltas = compute_deltas(zeros, n);
      const JohnsonFit f = fit(deltas);
      write_fit_row(csv, n, f);
      worst = std::max(worst, f.ks_statistic);
      ++rows;
      if (std::find(s.overlay.begin(), s.overlay.end(), n) != s.overlay.end())
        write_file(dir / ("fit_n" + std::to_string(n) + ".svg"),
                   overlay_svg(deltas, f, s.bins, "delta(" + std::to_string(n) + ")"));
    }
  }
  write_file(dir / "fits.csv", csv.str());
  out << "wrote " << rows << " fits, max ks " << format_number(worst) << '\n';
  if (worst > s.ks_max) {
    err << "ks statistic " << format_number(worst) << " exceeds --ks-max " << format_number(s.ks_max) << '\n';
    return kExitKsExceeded;
  }
  return kExitOk;
}

int cmd_plane(const Settings& s, bool window_given, std::ostream& out, std::ostream& err) {
  std::vector<LabeledCurve> curves;
  for (const auto& item : s.moments) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw ParameterError("--moments expects LABEL=PATH");
    std::ifstream in(item.substr(eq + 1));
    if (!in) throw InputError("cannot open '" + item.substr(eq + 1) + "'");
    curves.push_back({item.substr(0, eq), read_moment_curve_csv(in)});
  }
  if (curves.empty()) {
    const ZeroSet zeros = acquire_zeros(s, window_given, err);
    check_range(s, zeros);
    SweepOptions options;
    options.threads = s.threads;
    curves.push_back({s.label, sweep(zeros, s.n_from, s.n_to, options)});
  }

  const PlaneReport report = plane_report(curves);
  const fs::path dir = output_dir(s);
  std::ostringstream plane_csv, boundary_csv;
  write_plane_csv(plane_csv, report);
  write_boundary_csv(boundary_csv, report);
  write_file(dir / "plane.csv", plane_csv.str());
  write_file(dir / "boundary.csv", boundary_csv.str());

  static const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"};
  svg::Panel panel;
  panel.title = "skewness-kurtosis plane";
  panel.x_label = "skewness";
  panel.y_label = "kurtosis";
  double max_abs_skew = 0.5;
  for (std::size_t g = 0; g < report.groups.size(); ++g) {
    svg::Series points{{}, {}, kColors[g % 6], svg::Style::points, report.groups[g].dataset};
    for (const auto& p : report.groups[g].points) {
      points.xs.push_back(p.skewness);
      points.ys.push_back(p.kurtosis);
      max_abs_skew = std::max(max_abs_skew, std::abs(p.skewness));
    }
    panel.series.push_back(std::move(points));
  }
  svg::Series lower{{}, {}, "#d62728", svg::Style::dashed, "SL boundary"};
  svg::Series upper{{}, {}, "#d62728", svg::Style::dashed, ""};
  for (const auto& b : report.boundary) {
    const double skew = std::sqrt(b.skew_sq);
    if (skew > 1.5 * max_abs_skew) continue;
    lower.xs.push_back(-skew);
    lower.ys.push_back(b.kurtosis);
    upper.xs.push_back(skew);
    upper.ys.push_back(b.kurtosis);
  }
  std::reverse(lower.xs.begin(), lower.xs.end());
  std::reverse(lower.ys.begin(), lower.ys.end());
  lower.xs.insert(lower.xs.end(), upper.xs.begin(), upper.xs.end());
  lower.ys.insert(lower.ys.end(), upper.ys.begin(), upper.ys.end());
  panel.series.push_back(std::move(lower));
  panel.series.push_back({{0.0}, {3.0}, "#000", svg::Style::points, "normal (0, 3)"});
  write_file(dir / "plane.svg", svg::render(std::span<const svg::Panel>(&panel, 1)));

  for (const auto& group : report.groups) {
    out << group.dataset << ": " << group.points.size() << " points";
    if (group.dropped) out << ", " << group.dropped << " dropped as infeasible";
    const bool has_single = std::any_of(group.points.begin(), group.points.end(), [](const auto& p) { return p.n == 1; });
    if (has_single && group.points.size() >= 4) out << ", delta(1) separation " << format_number(plane_separation(group));
    out << '\n';
    if (group.dropped) err << group.dataset << ": dropped " << group.dropped << " infeasible rows\n";
  }
  return kExitOk;
}

int cmd_paircorr(const Settings& s, bool window_given, std::ostream& out, std::ostream& err) {
  if (!(s.max_x > 0.0) || !(s.bin_width > 0.0)) throw ParameterError("--max-x and --bin-width must be positive");
  const ZeroSet zeros = acquire_zeros(s, window_given, err);
  const auto unfolded = unfold(zeros);
  const Curve empirical = empirical_pair_correlation(unfolded, s.max_x, s.bin_width);
  const fs::path dir = output_dir(s);

  std::ostringstream csv;
  write_paircorr_csv(csv, empirical);
  write_file(dir / "paircorr.csv", csv.str());

  svg::Panel panel;
  panel.title = "pair correlation of unfolded zeros";
  panel.x_label = "x";
  panel.y_label = "density";
  panel.series.push_back({empirical.xs, empirical.ys, "#1f77b4", svg::Style::points, "empirical"});
  svg::Series model{{}, {}, "#d62728", svg::Style::line, "1 - (sin(pi x)/(pi x))^2"};
  for (int i = 0; i <= 600; ++i) {
    const double x = s.max_x * i / 600.0;
    model.xs.push_back(x);
    model.ys.push_back(montgomery_r2(x));
  }
  panel.series.push_back(std::move(model));
  write_file(dir / "paircorr.svg", svg::render(std::span<const svg::Panel>(&panel, 1)));

  double mae = 0.0;
  for (std::size_t i = 0; i < empirical.size(); ++i) mae += std::abs(empirical.ys[i] - montgomery_r2(empirical.xs[i]));
  mae /= static_cast<double>(empirical.size());
  out << "mean absolute error " << format_number(mae) << " over " << empirical.size() << " bins\n";
  return kExitOk;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const IncompleteScanError*>(&e)) return kExitIncompleteScan;
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const OffsetTooLargeError*>(&e))
    return kExitParameter;
  if (dynamic_cast<const Error*>(&e)) return kExitInput;
  return kExitFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Statistics of differences of Riemann zeta zeros", "zdl"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;

  auto* compute = app.add_subcommand("compute-zeros", "compute zeta zero ordinates into a plain list");
  compute->add_option("--count", s.count, "number of zeros")->required();
  compute->add_option("--start-index", s.start_index, "index of the first zero");
  compute->add_option("--format", s.format)->check(CLI::IsMember({"plain", "plain_list", "base-offset", "base_offset"}));
  compute->add_option("--out", s.out, "output file (default <out-dir>/zeros.txt)");
  compute->add_option("--out-dir", s.out_dir);
  compute->add_option("--threads", s.threads)->check(CLI::PositiveNumber);

  auto* sweep_cmd = app.add_subcommand("sweep", "moments of delta(n) for a range of n");
  add_common(sweep_cmd, s);
  sweep_cmd->add_option("--histograms", s.histograms, "also dump hist_n<N>.csv for these n")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* detect = app.add_subcommand("detect", "locate zeros from the variance curve");
  add_common(detect, s);
  detect->add_option("--reference", s.reference, "plain list of reference zeros (default: computed)");
  detect->add_option("--max-unmatched", s.max_unmatched, "allowed unmatched reference zeros");

  auto* fit_cmd = app.add_subcommand("fit", "Johnson fits of delta(n) distributions");
  add_common(fit_cmd, s);
  fit_cmd->add_option("--ks-max", s.ks_max, "largest acceptable KS statistic");
  fit_cmd->add_option("--overlay", s.overlay, "write fit_n<N>.svg for these n")
      ->delimiter(',')
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  fit_cmd->add_option("--sample", s.sample, "fit one sample read from a file instead");
  fit_cmd->add_option("--synthetic", s.synthetic, "fit FAMILY:gamma,delta,xi,lambda draws instead");
  fit_cmd->add_option("--sample-size", s.sample_size, "draws for --synthetic")->check(CLI::PositiveNumber);

  auto* plane = app.add_subcommand("plane", "skewness-kurtosis plane report");
  add_common(plane, s);
  plane->add_option("--moments", s.moments, "LABEL=moments.csv, repeatable")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  plane->add_option("--label", s.label, "dataset label for computed or --input zeros");

  auto* paircorr = app.add_subcommand("paircorr", "pair correlation of unfolded zeros");
  add_common(paircorr, s);
  paircorr->add_option("--max-x", s.max_x, "largest pair distance");
  paircorr->add_option("--bin-width", s.bin_width, "histogram bin width");

  for (auto* cmd : {compute, sweep_cmd, detect, fit_cmd, plane, paircorr})
    cmd->add_option("--config", config_path, "key=value file; flags given on the command line win");

  try {
    // Config values are placed ahead of the command-line flags so that the
    // latter take precedence under the TakeLast policy.
    std::vector<std::string> argv = args;
    for (std::size_t i = 1; i < argv.size(); ++i) {
      std::string path;
      std::size_t erase = 0;
      if (argv[i] == "--config" && i + 1 < argv.size()) {
        path = argv[i + 1];
        erase = 2;
      } else if (argv[i].rfind("--config=", 0) == 0) {
        path = argv[i].substr(9);
        erase = 1;
      }
      if (erase == 0) continue;
      const CLI::App* cmd = app.get_subcommand_no_throw(argv[0]);
      if (cmd == nullptr) break;
      argv.erase(argv.begin() + static_cast<std::ptrdiff_t>(i), argv.begin() + static_cast<std::ptrdiff_t>(i + erase));
      const auto extra = config_arguments(path, *cmd);
      argv.insert(argv.begin() + 1, extra.begin(), extra.end());
      break;
    }
    std::reverse(argv.begin(), argv.end());
    try {
      app.parse(argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitParameter;
    }

    auto given = [](CLI::App* cmd) { return cmd->get_option("--window")->count() > 0; };
    if (compute->parsed()) return cmd_compute_zeros(s, out, err);
    if (sweep_cmd->parsed()) return cmd_sweep(s, given(sweep_cmd), out, err);
    if (detect->parsed()) return cmd_detect(s, given(detect), out, err);
    if (fit_cmd->parsed()) return cmd_fit(s, given(fit_cmd), out, err);
    if (plane->parsed()) return cmd_plane(s, given(plane), out, err);
    if (paircorr->parsed()) return cmd_paircorr(s, given(paircorr), out, err);
    return kExitParameter;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
}

}  // namespace zdl
