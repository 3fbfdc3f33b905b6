#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zdl/errors.hpp"
#include "zdl/riemann_siegel.hpp"
#include "zdl/zero_source.hpp"

using namespace zdl;

// Oracle values below come from mpmath at 30 digits (siegeltheta, siegelz,
// grampoint, zetazero).

TEST_CASE("theta against arbitrary precision") {
  CHECK(std::abs(riemann_siegel_theta(100.0) - 87.9721652317872196) < 1e-9);
  CHECK(std::abs(riemann_siegel_theta(50.0) - 26.4613660701614096) < 1e-9);
  CHECK(std::abs(riemann_siegel_theta(17.8455995404108608)) < 1e-8);
  CHECK(riemann_siegel_theta(50.0) < riemann_siegel_theta(60.0));
  for (double t = 18.0; t < 2000.0; t *= 1.07) CHECK(riemann_siegel_theta(t) < riemann_siegel_theta(t * 1.001));
}

TEST_CASE("theta and Z domains") {
  CHECK_THROWS_AS(riemann_siegel_theta(10.0), DomainError);
  CHECK_THROWS_AS(riemann_siegel_theta(-1.0), DomainError);
  CHECK_THROWS_AS(riemann_siegel_z(9.5), DomainError);
  CHECK_THROWS_AS(hardy_z(9.5), DomainError);
}

TEST_CASE("Z against arbitrary precision") {
  struct Point {
    double t, z;
  };
  const Point points[] = {
      {18.0, 2.336799689916952},      {50.5, -1.142892184023802},    {100.3, 2.56377982554558},
      {199.9, 5.819488059669555},     {1000.7, 2.441974632628988},   {5000.3, 0.2081829370297279},
      {601331.2, 4.354474763078239},
  };
  for (const auto& p : points) {
    CAPTURE(p.t);
    CHECK(std::abs(hardy_z(p.t) - p.z) < 1e-6);
    CHECK(std::signbit(riemann_siegel_z(p.t)) == std::signbit(p.z));
  }
  // Above the switch-over both evaluators are the Riemann-Siegel sum.
  CHECK(std::abs(riemann_siegel_z(1000.7) - 2.441974632628988) < 1e-6);
  CHECK(std::abs(riemann_siegel_z(601331.2) - 4.354474763078239) < 1e-6);
  CHECK(std::abs(hardy_z(14.134725)) < 1e-4);
  CHECK(std::abs(riemann_siegel_z(14.134725)) < 1e-4);
}

TEST_CASE("Gram points") {
  CHECK(std::abs(gram_point(0) - 17.8455995404108608) < 1e-6);
  CHECK(std::abs(gram_point(1) - 23.1702827012463093) < 1e-6);
  CHECK(std::abs(gram_point(1000) - 1421.25638903275016) < 1e-6);
  for (std::int64_t k = 0; k < 200; ++k) CHECK(gram_point(k + 1) > gram_point(k));
  CHECK(hardy_z(gram_point(0)) * hardy_z(gram_point(1)) < 0.0);
  CHECK_THROWS_AS(gram_point(-1), ParameterError);
}

TEST_CASE("first zeros, including those named around the variance dips") {
  const ZeroSet one = compute_zeros(1);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(one.ordinate(0) - 14.134725141734693790) < 1e-6);

  const ZeroSet five = compute_zeros(5);
  CHECK(std::abs(five.ordinate(4) - 32.935061587739189691) < 1e-6);

  const ZeroSet eight = compute_zeros(8);
  CHECK(std::abs(eight.ordinate(5) - 37.586178158825671257) < 1e-6);
  CHECK(std::abs(eight.ordinate(6) - 40.918719012147495187) < 1e-6);
  CHECK(std::abs(eight.ordinate(7) - 43.327073280914999519) < 1e-6);
}

TEST_CASE("first 1000 zeros match the stored table") {
  const ZeroSet table = read_zero_file(std::string(ZDL_TEST_DATA) + "/zeros_1000.txt", ZeroFileFormat::plain_list);
  const ZeroSet computed = compute_zeros(1000);
  REQUIRE(computed.size() == table.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < table.size(); ++i) worst = std::max(worst, std::abs(computed.ordinate(i) - table.ordinate(i)));
  CHECK(worst < 1e-6);
  CHECK_NOTHROW(computed.validate());

  // A window starting inside the table agrees with it too.
  const ZeroSet middle = compute_zeros(50, 400);
  CHECK(middle.start_index.str() == "400");
  for (std::size_t i = 0; i < middle.size(); ++i) CHECK(std::abs(middle.ordinate(i) - table.ordinate(399 + i)) < 1e-6);
}

TEST_CASE("zero count below good Gram points") {
  const ZeroSet table = read_zero_file(std::string(ZDL_TEST_DATA) + "/zeros_1000.txt", ZeroFileFormat::plain_list);
  const double last = table.ordinate(table.size() - 1);
  int checked = 0;
  for (std::int64_t k = 0;; ++k) {
    const double g = gram_point(k);
    if (g >= last) break;
    if ((k % 2 == 0 ? 1.0 : -1.0) * hardy_z(g) <= 0.0) continue;
    std::size_t below = 0;
    while (below < table.size() && table.ordinate(below) < g) ++below;
    CAPTURE(k);
    CHECK(static_cast<std::int64_t>(below) == k + 1);
    CHECK(zero_count_estimate(0.5 * (g + gram_point(k + 1))) == k + 1);
    ++checked;
  }
  CHECK(checked > 800);
}

TEST_CASE("compute_zeros rejects bad ranges") {
  CHECK_THROWS_AS(compute_zeros(0), ParameterError);
  CHECK_THROWS_AS(compute_zeros(10, 0), ParameterError);
  CHECK_THROWS_AS(compute_zeros(10, kMaxComputedIndex), ParameterError);
}

TEST_CASE("threaded scan equals the serial one") {
  ZeroScanOptions options;
  options.threads = 3;
  const ZeroSet serial = compute_zeros(3000, 20000);
  const ZeroSet threaded = compute_zeros(3000, 20000, options);
  CHECK(serial.offsets == threaded.offsets);
}

TEST_CASE("Gram law violation with a three-zero interval is resolved") {
  // The block around t = 601331 has an interval holding three zeros.
  const ZeroSet z = compute_zeros(200, 1001850);
  CHECK(z.size() == 200);
  CHECK_NOTHROW(z.validate());
}
