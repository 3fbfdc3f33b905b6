#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "zdl/analysis.hpp"
#include "zdl/cli.hpp"
#include "zdl/delta_engine.hpp"
#include "zdl/errors.hpp"
#include "zdl/johnson.hpp"
#include "zdl/riemann_siegel.hpp"
#include "zdl/stats.hpp"
#include "zdl/zero_source.hpp"

namespace py = pybind11;
using namespace zdl;

namespace {

ZeroSet zeros_from_list(const std::vector<double>& ordinates) {
  std::ostringstream text;
  text.precision(17);
  for (double t : ordinates) text << t << '\n';
  std::istringstream in(text.str());
  return parse_zeros(in, ZeroFileFormat::plain_list);
}

std::vector<double> ordinates(const ZeroSet& z) {
  std::vector<double> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = z.ordinate(i);
  return out;
}

py::dict moments_dict(const Moments& m) {
  py::dict d;
  d["count"] = m.count;
  d["mean"] = m.mean;
  d["variance"] = m.variance;
  d["skewness"] = m.skewness;
  d["kurtosis"] = m.kurtosis;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributions of differences between zeta zeros";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<MonotonicityError>(m, "MonotonicityError", base.ptr());
  py::register_exception<IncompleteScanError>(m, "IncompleteScanError", base.ptr());
  py::register_exception<OffsetTooLargeError>(m, "OffsetTooLargeError", base.ptr());
  py::register_exception<EmptyInputError>(m, "EmptyInputError", base.ptr());
  py::register_exception<InsufficientPointsError>(m, "InsufficientPointsError", base.ptr());
  py::register_exception<InfeasibleMomentsError>(m, "InfeasibleMomentsError", base.ptr());
  py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError", base.ptr());

  py::class_<ZeroSet>(m, "ZeroSet")
      .def("__len__", &ZeroSet::size)
      .def_property_readonly("base", [](const ZeroSet& z) { return z.base.str(); })
      .def_property_readonly("start_index", [](const ZeroSet& z) { return z.start_index.str(); })
      .def_readonly("offsets", &ZeroSet::offsets)
      .def("ordinates", &ordinates);

  m.def("compute_zeros", [](std::uint64_t count, std::uint64_t start_index, unsigned threads) {
    ZeroScanOptions options;
    options.threads = threads;
    py::gil_scoped_release release;
    return compute_zeros(count, start_index, options);
  }, py::arg("count"), py::arg("start_index") = 1, py::arg("threads") = 1);
  m.def("read_zeros", [](const std::string& path, const std::string& format) {
    return read_zero_file(path, parse_format_name(format));
  }, py::arg("path"), py::arg("format") = "plain");
  m.def("zeros_from_list", &zeros_from_list, py::arg("ordinates"));
  m.def("riemann_siegel_z", &riemann_siegel_z, py::arg("t"));
  m.def("gram_point", &gram_point, py::arg("k"));

  m.def("compute_deltas", &compute_deltas, py::arg("zeros"), py::arg("n"));
  m.def("moments", [](const std::vector<double>& values) { return moments_dict(chunked_moments(values)); },
        py::arg("values"));
  m.def("sweep", [](const ZeroSet& zeros, std::size_t n_from, std::size_t n_to, unsigned threads) {
    SweepOptions options;
    options.threads = threads;
    MomentCurve curve;
    {
      py::gil_scoped_release release;
      curve = sweep(zeros, n_from, n_to, options);
    }
    py::list rows;
    for (const auto& r : curve.rows) {
      py::dict d = moments_dict(r.moments);
      d["n"] = r.n;
      rows.append(d);
    }
    return rows;
  }, py::arg("zeros"), py::arg("n_from"), py::arg("n_to"), py::arg("threads") = 1);

  py::enum_<JohnsonFamily>(m, "JohnsonFamily")
      .value("SL", JohnsonFamily::SL)
      .value("SU", JohnsonFamily::SU)
      .value("SB", JohnsonFamily::SB);
  py::class_<JohnsonParams>(m, "JohnsonParams")
      .def(py::init([](JohnsonFamily family, double gamma, double delta, double xi, double lambda) {
             JohnsonParams p{family, gamma, delta, xi, lambda};
             p.validate();
             return p;
           }),
           py::arg("family"), py::arg("gamma"), py::arg("delta"), py::arg("xi") = 0.0, py::arg("lambda_") = 1.0)
      .def_readwrite("family", &JohnsonParams::family)
      .def_readwrite("gamma", &JohnsonParams::gamma)
      .def_readwrite("delta", &JohnsonParams::delta)
      .def_readwrite("xi", &JohnsonParams::xi)
      .def_readwrite("lambda_", &JohnsonParams::lambda)
      .def("__repr__", [](const JohnsonParams& p) {
        std::ostringstream s;
        s << "JohnsonParams(" << family_name(p.family) << ", gamma=" << p.gamma << ", delta=" << p.delta
          << ", xi=" << p.xi << ", lambda_=" << p.lambda << ")";
        return s.str();
      });
  py::class_<JohnsonFit>(m, "JohnsonFit")
      .def_readonly("params", &JohnsonFit::params)
      .def_readonly("ks_statistic", &JohnsonFit::ks_statistic)
      .def_readonly("log_likelihood", &JohnsonFit::log_likelihood)
      .def_readonly("iterations", &JohnsonFit::iterations)
      .def_readonly("converged", &JohnsonFit::converged);

  m.def("pdf", &pdf, py::arg("params"), py::arg("x"));
  m.def("cdf", &cdf, py::arg("params"), py::arg("x"));
  m.def("quantile", &quantile, py::arg("params"), py::arg("p"));
  m.def("sample", &sample, py::arg("params"), py::arg("count"), py::arg("seed") = 1);
  m.def("select_family", &select_family, py::arg("skewness"), py::arg("kurtosis"));
  m.def("fit", [](const std::vector<double>& values, int max_iterations) {
    FitOptions options;
    options.max_iterations = max_iterations;
    py::gil_scoped_release release;
    return fit(values, options);
  }, py::arg("values"), py::arg("max_iterations") = 2000);

  m.def("detect", [](const ZeroSet& zeros, std::size_t n_from, std::size_t n_to, const std::vector<double>& reference,
                     double tolerance) {
    DetectionConfig config;
    config.tolerance = tolerance;
    DetectionResult r;
    {
      py::gil_scoped_release release;
      r = detect_zeros_end_to_end(zeros, n_from, n_to, reference, config);
    }
    py::list matches;
    for (const auto& x : r.report.matches) matches.append(py::make_tuple(x.detected, x.reference, x.abs_error));
    py::dict d;
    d["minima"] = r.minima.minima_x;
    d["matches"] = matches;
    d["unmatched_detected"] = r.report.unmatched_detected;
    d["unmatched_reference"] = r.report.unmatched_reference;
    d["window"] = r.window;
    d["prominence"] = r.prominence;
    return d;
  }, py::arg("zeros"), py::arg("n_from"), py::arg("n_to"), py::arg("reference"), py::arg("tolerance") = 0.1);

  m.def("unfold", &unfold, py::arg("zeros"));
  m.def("pair_correlation", [](const std::vector<double>& unfolded, double max_x, double bin_width) {
    const Curve c = empirical_pair_correlation(unfolded, max_x, bin_width);
    return py::make_tuple(c.xs, c.ys);
  }, py::arg("unfolded"), py::arg("max_x") = 3.0, py::arg("bin_width") = 0.05);
  m.def("montgomery_r2", &montgomery_r2, py::arg("x"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = run_cli(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
