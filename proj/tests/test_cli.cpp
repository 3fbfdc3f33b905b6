#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "zdl/cli.hpp"
#include "zdl/delta_engine.hpp"
#include "zdl/zero_source.hpp"

using namespace zdl;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("zdl_cli_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

fs::path progression_file(const fs::path& dir, int count) {
  std::ostringstream text;
  for (int i = 0; i < count; ++i) text << 1 + i << ".0\n";
  write(dir / "ap.txt", text.str());
  return dir / "ap.txt";
}

void check_svg(const fs::path& path) {
  boost::property_tree::ptree tree;
  std::ifstream in(path);
  REQUIRE(in);
  boost::property_tree::read_xml(in, tree);
  CHECK(tree.get<int>("svg.<xmlattr>.width") > 0);
  CHECK(tree.get<int>("svg.<xmlattr>.height") > 0);
}

}  // namespace

TEST_CASE("compute-zeros writes a parseable, reproducible list") {
  const fs::path dir = scratch("compute");
  const std::string file = (dir / "zeros.txt").string();
  REQUIRE(run({"compute-zeros", "--count", "100", "--out", file}).code == kExitOk);
  const std::string first = slurp(file);
  const ZeroSet z = read_zero_file(file, ZeroFileFormat::plain_list);
  REQUIRE(z.size() == 100);
  CHECK(std::abs(z.ordinate(0) - 14.134725) < 1e-6);
  CHECK_NOTHROW(z.validate());

  REQUIRE(run({"compute-zeros", "--count", "100", "--out", file}).code == kExitOk);
  CHECK(slurp(file) == first);

  const Run zero = run({"compute-zeros", "--count", "0", "--out", file});
  CHECK(zero.code == kExitParameter);
  CHECK(run({"compute-zeros"}).code == kExitParameter);
  CHECK(run({"compute-zeros", "--count", "5", "--start-index", "0", "--out", file}).code == kExitParameter);
  CHECK(run({"no-such-command"}).code == kExitParameter);

  REQUIRE(run({"compute-zeros", "--count", "10", "--start-index", "7", "--format", "base-offset", "--out", file}).code ==
          kExitOk);
  const ZeroSet offsets = read_zero_file(file, ZeroFileFormat::base_offset);
  CHECK(offsets.start_index.str() == "7");
  CHECK(offsets.size() == 10);
}

TEST_CASE("sweep of an arithmetic progression") {
  const fs::path dir = scratch("sweep");
  const auto ap = progression_file(dir, 500).string();
  const Run r = run({"sweep", "--input", ap, "--n-from", "1", "--n-to", "40", "--out-dir", dir.string(),
                     "--histograms", "3,7"});
  REQUIRE(r.code == kExitOk);
  std::ifstream in(dir / "moments.csv");
  const MomentCurve curve = read_moment_curve_csv(in);
  REQUIRE(curve.size() == 40);
  for (const auto& row : curve.rows) CHECK(row.moments.variance == 0.0);
  CHECK(fs::exists(dir / "hist_n3.csv"));
  CHECK(fs::exists(dir / "hist_n7.csv"));
}

TEST_CASE("sweep errors") {
  const fs::path dir = scratch("sweep_errors");
  const auto ap = progression_file(dir, 50).string();
  CHECK(run({"sweep", "--input", ap, "--n-to", "50", "--out-dir", dir.string()}).code == kExitParameter);
  CHECK(run({"sweep", "--input", ap, "--n-from", "9", "--n-to", "3", "--out-dir", dir.string()}).code ==
        kExitParameter);
  CHECK(run({"sweep", "--input", ap, "--window", "20", "--n-to", "30", "--out-dir", dir.string()}).code ==
        kExitParameter);
  write(dir / "bad.txt", "1.0\n3.0\n2.0\n");
  CHECK(run({"sweep", "--input", (dir / "bad.txt").string(), "--n-to", "1", "--out-dir", dir.string()}).code ==
        kExitInput);
  write(dir / "junk.txt", "1.0\nabc\n");
  CHECK(run({"sweep", "--input", (dir / "junk.txt").string(), "--n-to", "1", "--out-dir", dir.string()}).code ==
        kExitInput);
  CHECK(run({"sweep", "--input", (dir / "missing.txt").string(), "--out-dir", dir.string()}).code == kExitInput);
  CHECK(run({"sweep", "--input", ap, "--format", "xml"}).code == kExitParameter);
}

TEST_CASE("config files") {
  const fs::path dir = scratch("config");
  const auto ap = progression_file(dir, 300).string();
  write(dir / "run.cfg", "# frozen run\ninput = " + ap + "\nn-from=2\nn-to = 30\nout-dir=" + dir.string() + "\n");
  REQUIRE(run({"sweep", "--config", (dir / "run.cfg").string()}).code == kExitOk);
  {
    std::ifstream in(dir / "moments.csv");
    const MomentCurve curve = read_moment_curve_csv(in);
    REQUIRE(curve.size() == 29);
    CHECK(curve.rows.front().n == 2);
  }
  // Command-line flags win over the file.
  REQUIRE(run({"sweep", "--n-to", "10", "--config", (dir / "run.cfg").string()}).code == kExitOk);
  {
    std::ifstream in(dir / "moments.csv");
    CHECK(read_moment_curve_csv(in).size() == 9);
  }
  write(dir / "bad.cfg", "n-from=2\nsmoothness=3\n");
  const Run bad = run({"sweep", "--config", (dir / "bad.cfg").string()});
  CHECK(bad.code == kExitParameter);
  CHECK(bad.err.find("smoothness") != std::string::npos);
  write(dir / "noeq.cfg", "n-from 2\n");
  CHECK(run({"sweep", "--config", (dir / "noeq.cfg").string()}).code == kExitParameter);
}

TEST_CASE("output directory from the environment") {
  const fs::path dir = scratch("env");
  const auto ap = progression_file(dir, 100).string();
  const fs::path target = dir / "from_env";
  ::setenv("ZDL_OUT_DIR", target.string().c_str(), 1);
  const Run r = run({"sweep", "--input", ap, "--n-to", "5"});
  ::unsetenv("ZDL_OUT_DIR");
  REQUIRE(r.code == kExitOk);
  CHECK(fs::exists(target / "moments.csv"));
}

TEST_CASE("detect on flat input leaves every zero unmatched") {
  const fs::path dir = scratch("detect_flat");
  const auto ap = progression_file(dir, 2000).string();
  const Run r = run({"detect", "--input", ap, "--n-from", "1", "--n-to", "60", "--out-dir", dir.string()});
  CHECK(r.code == kExitUnmatched);
  CHECK(fs::exists(dir / "detection.csv"));
  check_svg(dir / "variance.svg");
  CHECK(run({"detect", "--input", ap, "--n-to", "60", "--max-unmatched", "100", "--out-dir", dir.string()}).code ==
        kExitOk);
  CHECK(run({"detect", "--input", ap, "--n-to", "60", "--smooth", "4", "--out-dir", dir.string()}).code ==
        kExitParameter);
  CHECK(run({"detect", "--input", ap, "--n-to", "60", "--prominence", "-1", "--out-dir", dir.string()}).code ==
        kExitParameter);
}

TEST_CASE("detect on real zeros with a reference file") {
  const fs::path dir = scratch("detect_real");
  const std::string zeros = (dir / "z.txt").string();
  REQUIRE(run({"compute-zeros", "--count", "20000", "--start-index", "1", "--out", zeros}).code == kExitOk);
  std::ofstream(dir / "ref.txt") << "14.134725142\n21.022039639\n25.010857580\n30.424876126\n";
  const Run r = run({"detect", "--input", zeros, "--n-from", "5", "--n-to", "30", "--reference",
                     (dir / "ref.txt").string(), "--max-unmatched", "4", "--out-dir", dir.string()});
  CHECK(r.code == kExitOk);
  check_svg(dir / "variance.svg");
  const std::string csv = slurp(dir / "detection.csv");
  CHECK(csv.rfind("detected_x,reference_x,abs_error\n", 0) == 0);
  CHECK(csv.find("# unmatched_reference=") != std::string::npos);
}

TEST_CASE("fit") {
  const fs::path dir = scratch("fit");
  const Run su = run({"fit", "--synthetic", "SU:-1,2,10,3", "--sample-size", "20000", "--seed", "3", "--out-dir",
                      dir.string()});
  CHECK(su.code == kExitOk);
  const std::string csv = slurp(dir / "fits.csv");
  CHECK(csv.rfind("n,family,gamma,delta,xi,lambda,ks\n0,SU,", 0) == 0);
  check_svg(dir / "fit_sample.svg");

  CHECK(run({"fit", "--synthetic", "SU:-1,2,10,3", "--sample-size", "20000", "--ks-max", "0", "--out-dir",
             dir.string()})
            .code == kExitKsExceeded);
  CHECK(run({"fit", "--synthetic", "SX:1,2,3,4", "--out-dir", dir.string()}).code == kExitParameter);
  CHECK(run({"fit", "--synthetic", "SU:1,0,3,4", "--out-dir", dir.string()}).code == kExitParameter);

  const std::string zeros = (dir / "z.txt").string();
  REQUIRE(run({"compute-zeros", "--count", "5000", "--out", zeros}).code == kExitOk);
  const Run real = run({"fit", "--input", zeros, "--n-from", "1", "--n-to", "3", "--overlay", "2", "--ks-max", "0.05",
                        "--out-dir", dir.string()});
  CHECK(real.code == kExitOk);
  check_svg(dir / "fit_n2.svg");
  CHECK_FALSE(fs::exists(dir / "fit_n1.svg"));

  std::ofstream(dir / "values.txt") << "1\n2\n";
  CHECK(run({"fit", "--sample", (dir / "values.txt").string(), "--out-dir", dir.string()}).code == kExitInput);
}

TEST_CASE("plane and paircorr") {
  const fs::path dir = scratch("plane");
  const std::string zeros = (dir / "z.txt").string();
  REQUIRE(run({"compute-zeros", "--count", "5000", "--start-index", "1000", "--out", zeros}).code == kExitOk);
  REQUIRE(run({"sweep", "--input", zeros, "--n-from", "1", "--n-to", "200", "--out-dir", dir.string()}).code ==
          kExitOk);
  const Run plane = run({"plane", "--moments", "a=" + (dir / "moments.csv").string(), "--moments",
                         "b=" + (dir / "moments.csv").string(), "--out-dir", dir.string()});
  CHECK(plane.code == kExitOk);
  const std::string csv = slurp(dir / "plane.csv");
  CHECK(csv.rfind("dataset,n,skewness,kurtosis,family\na,1,", 0) == 0);
  CHECK(csv.find("\nb,200,") != std::string::npos);
  CHECK(slurp(dir / "boundary.csv").rfind("skew_sq,kurtosis\n", 0) == 0);
  check_svg(dir / "plane.svg");

  CHECK(run({"plane", "--moments", "a=" + (dir / "nothing.csv").string(), "--out-dir", dir.string()}).code ==
        kExitInput);
  write(dir / "broken.csv", "n,mean\n");
  CHECK(run({"plane", "--moments", "a=" + (dir / "broken.csv").string(), "--out-dir", dir.string()}).code ==
        kExitInput);

  const Run pc = run({"paircorr", "--input", zeros, "--out-dir", dir.string()});
  CHECK(pc.code == kExitOk);
  CHECK(slurp(dir / "paircorr.csv").rfind("x,empirical,model\n", 0) == 0);
  check_svg(dir / "paircorr.svg");
  write(dir / "bad.txt", "20.0\n19.0\n");
  CHECK(run({"paircorr", "--input", (dir / "bad.txt").string(), "--out-dir", dir.string()}).code == kExitInput);
  CHECK(run({"paircorr", "--input", zeros, "--window", "500", "--out-dir", dir.string()}).code == kExitInput);
}

TEST_CASE("identical runs give identical files") {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  for (const auto& dir : {a, b}) {
    REQUIRE(run({"compute-zeros", "--count", "3000", "--start-index", "500", "--out", (dir / "z.txt").string()}).code ==
            kExitOk);
    REQUIRE(run({"sweep", "--input", (dir / "z.txt").string(), "--n-to", "100", "--threads", "3", "--out-dir",
                 dir.string()})
                .code == kExitOk);
    REQUIRE(run({"fit", "--input", (dir / "z.txt").string(), "--n-from", "10", "--n-to", "12", "--ks-max", "1",
                 "--out-dir", dir.string()})
                .code == kExitOk);
  }
  for (const char* name : {"z.txt", "moments.csv", "fits.csv"}) CHECK(slurp(a / name) == slurp(b / name));
}
