#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/sinh_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "zdl/errors.hpp"
#include "zdl/johnson.hpp"
#include "zdl/moments.hpp"

using namespace zdl;

namespace {

JohnsonParams make(JohnsonFamily f, double g, double d, double x, double l) {
  JohnsonParams p;
  p.family = f;
  p.gamma = g;
  p.delta = d;
  p.xi = x;
  p.lambda = l;
  return p;
}

// Integral of h(x) * pdf(x) over the support.
template <class F>
double integrate(const JohnsonParams& p, F h) {
  auto integrand = [&](double x) {
    const double density = pdf(p, x);
    return density == 0.0 ? 0.0 : h(x) * density;
  };
  switch (p.family) {
    case JohnsonFamily::SU: {
      boost::math::quadrature::sinh_sinh<double> q;
      return q.integrate(integrand);
    }
    case JohnsonFamily::SL: {
      boost::math::quadrature::exp_sinh<double> q;
      return q.integrate([&](double t) { return integrand(p.xi + t); }, 0.0, std::numeric_limits<double>::infinity());
    }
    case JohnsonFamily::SB: {
      boost::math::quadrature::tanh_sinh<double> q;
      return q.integrate(integrand, p.xi, p.xi + p.lambda);
    }
  }
  return 0.0;
}

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("pdf spot values and support") {
  CHECK(pdf(make(JohnsonFamily::SU, 0, 1, 0, 1), 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(pdf(make(JohnsonFamily::SB, 0.3, 1.2, 2.0, 4.0), 1.0) == 0.0);
  CHECK(pdf(make(JohnsonFamily::SB, 0.3, 1.2, 2.0, 4.0), 6.5) == 0.0);
  CHECK(pdf(make(JohnsonFamily::SL, 0.3, 1.2, 2.0, 1.0), 1.5) == 0.0);
  CHECK_THROWS_AS(pdf(make(JohnsonFamily::SU, 0, 0, 0, 1), 0.0), ParameterError);
  CHECK_THROWS_AS(pdf(make(JohnsonFamily::SU, 0, 1, 0, -1), 0.0), ParameterError);
}

TEST_CASE("pdf is the derivative of cdf") {
  const JohnsonParams p = make(JohnsonFamily::SU, -1.5, 2, 3, 0.5);
  const double h = 1e-5;
  const double fd = (cdf(p, 3.2 + h) - cdf(p, 3.2 - h)) / (2 * h);
  CHECK(std::abs(pdf(p, 3.2) - fd) < 1e-7);

  for (const auto& q : {make(JohnsonFamily::SB, 0.7, 1.3, -1, 3), make(JohnsonFamily::SL, -0.4, 0.9, 2, 1.5),
                        make(JohnsonFamily::SU, 0.8, 0.7, 10, 2)}) {
    for (double pr = 0.05; pr < 0.96; pr += 0.05) {
      const double x = quantile(q, pr);
      const double d = (cdf(q, x + h) - cdf(q, x - h)) / (2 * h);
      CHECK(std::abs(pdf(q, x) - d) < 1e-6);
    }
  }
}

TEST_CASE("cdf limits and symmetry") {
  CHECK(cdf(make(JohnsonFamily::SU, 0, 1.7, 4, 2), 4.0) == doctest::Approx(0.5).epsilon(1e-15));
  const JohnsonParams sb = make(JohnsonFamily::SB, 0.5, 1.1, 1, 2);
  CHECK(cdf(sb, 1.0 + 1e-12) < 1e-6);
  CHECK(cdf(sb, 1.0) == 0.0);
  CHECK(cdf(sb, 3.0 - 1e-12) > 1 - 1e-6);
  CHECK(cdf(sb, 3.0) == 1.0);
  double last = 0.0;
  for (double x = 0.5; x < 3.5; x += 0.01) {
    const double c = cdf(sb, x);
    CHECK(c >= last);
    last = c;
  }
}

TEST_CASE("SL is a shifted lognormal") {
  // X - xi ~ LogNormal(mu, sigma) with sigma = 1 / delta and mu = ln(lambda) - gamma / delta.
  const JohnsonParams p = make(JohnsonFamily::SL, 0.8, 1.6, 2.0, 3.0);
  const double sigma = 1.0 / p.delta;
  const double mu = std::log(p.lambda) - p.gamma / p.delta;
  for (double x = 2.01; x < 40.0; x *= 1.1) CHECK(std::abs(cdf(p, x) - std_normal_cdf((std::log(x - 2.0) - mu) / sigma)) < 1e-10);
}

TEST_CASE("quantile") {
  CHECK(quantile(make(JohnsonFamily::SU, 0, 1.3, 7, 2), 0.5) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(quantile(make(JohnsonFamily::SB, 0, 1, 2, 6), 0.5) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK_THROWS_AS(quantile(make(JohnsonFamily::SU, 0, 1, 0, 1), 0.0), DomainError);
  CHECK_THROWS_AS(quantile(make(JohnsonFamily::SU, 0, 1, 0, 1), 1.0), DomainError);
  for (const auto& q : {make(JohnsonFamily::SB, 0.7, 1.3, -1, 3), make(JohnsonFamily::SL, -0.4, 0.9, 2, 1.5),
                        make(JohnsonFamily::SU, -2, 0.6, 10, 2)}) {
    for (int i = 1; i <= 99; ++i) {
      const double pr = i / 100.0;
      CHECK(std::abs(cdf(q, quantile(q, pr)) - pr) < 1e-9);
    }
  }
}

TEST_CASE("sampling") {
  const JohnsonParams sb = make(JohnsonFamily::SB, -0.5, 0.8, 3, 2);
  const auto s = sample(sb, 100000, 4);
  for (double x : s) CHECK_FALSE((x <= 3.0 || x >= 5.0));
  CHECK(sample(sb, 1000, 9) == sample(sb, 1000, 9));
  CHECK(sample(sb, 1000, 9) != sample(sb, 1000, 10));
}

TEST_CASE("SU mean against its closed form") {
  const JohnsonParams p = make(JohnsonFamily::SU, -1, 2, 10, 3);
  const double analytic = p.xi - p.lambda * std::exp(0.5 / (p.delta * p.delta)) * std::sinh(p.gamma / p.delta);
  // The closed form agrees with direct quadrature.
  CHECK(integrate(p, [](double x) { return x; }) == doctest::Approx(analytic).epsilon(1e-9));

  const auto s = sample(p, 1000000, 21);
  const Moments m = chunked_moments(s);
  const double se = std::sqrt(m.variance / static_cast<double>(s.size()));
  CHECK(std::abs(m.mean - analytic) < 3.0 * se);
}

TEST_CASE("pdf integrates to one") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> g(-3, 3), d(0.4, 4), x(-10, 10), l(0.1, 10);
  for (auto family : {JohnsonFamily::SU, JohnsonFamily::SB, JohnsonFamily::SL}) {
    for (int i = 0; i < 25; ++i) {
      const JohnsonParams p = make(family, g(rng), d(rng), x(rng), l(rng));
      CAPTURE(family_name(family));
      CAPTURE(p.gamma);
      CAPTURE(p.delta);
      CHECK(std::abs(integrate(p, [](double) { return 1.0; }) - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("SL boundary") {
  const auto far = sl_boundary(1e4);
  CHECK(far.skew_sq < 1e-7);
  CHECK(std::abs(far.kurtosis - 3.0) < 1e-6);

  // Lognormal with sigma = 1 / delta: central moments from the raw moments
  // E[Y^k] = exp(k^2 sigma^2 / 2).
  for (double delta : {0.8, 1.0, 2.0, 5.0}) {
    const double s2 = 1.0 / (delta * delta);
    auto raw = [&](int k) { return std::exp(0.5 * k * k * s2); };
    const double mean = raw(1);
    const double c2 = raw(2) - mean * mean;
    const double c3 = raw(3) - 3 * mean * raw(2) + 2 * std::pow(mean, 3);
    const double c4 = raw(4) - 4 * mean * raw(3) + 6 * mean * mean * raw(2) - 3 * std::pow(mean, 4);
    const auto b = sl_boundary(delta);
    CHECK(b.skew_sq == doctest::Approx(c3 * c3 / (c2 * c2 * c2)).epsilon(1e-9));
    CHECK(b.kurtosis == doctest::Approx(c4 / (c2 * c2)).epsilon(1e-9));
    CHECK(sl_boundary_kurtosis(b.skew_sq) == doctest::Approx(b.kurtosis).epsilon(1e-10));
  }

  // Sampling cross-check where the lognormal moments converge quickly.
  const auto draws = sample(make(JohnsonFamily::SL, 0, 3.0, 0, 1), 2000000, 5);
  const Moments m = chunked_moments(draws);
  const auto b = sl_boundary(3.0);
  CHECK(m.skewness * m.skewness == doctest::Approx(b.skew_sq).epsilon(0.01));
  CHECK(m.kurtosis == doctest::Approx(b.kurtosis).epsilon(0.01));

  double last = 3.0;
  for (double delta = 10.0; delta > 0.3; delta *= 0.9) {
    const auto point = sl_boundary(delta);
    CHECK(point.kurtosis > last);
    last = point.kurtosis;
  }
  CHECK_THROWS_AS(sl_boundary(0.0), ParameterError);
}

TEST_CASE("family selection") {
  CHECK(select_family(0.0, 2.5) == JohnsonFamily::SB);
  CHECK(select_family(0.0, 4.0) == JohnsonFamily::SU);
  CHECK_THROWS_AS(select_family(0.5, 1.2), InfeasibleMomentsError);
  const auto b = sl_boundary(1.3);
  CHECK(select_family(std::sqrt(b.skew_sq), b.kurtosis) == JohnsonFamily::SL);
  for (double s = -2.0; s <= 2.0; s += 0.25)
    for (double k = 1.0 + s * s + 0.1; k < 12.0; k += 0.7) CHECK(select_family(s, k) == select_family(-s, k));
}

TEST_CASE("fit recovers an SU sample") {
  const JohnsonParams truth = make(JohnsonFamily::SU, -1, 2, 10, 3);
  const JohnsonFit f = fit(sample(truth, 100000, 31));
  REQUIRE(f.params.family == JohnsonFamily::SU);
  CHECK(f.params.gamma == doctest::Approx(truth.gamma).epsilon(0.05));
  CHECK(f.params.delta == doctest::Approx(truth.delta).epsilon(0.05));
  CHECK(f.params.xi == doctest::Approx(truth.xi).epsilon(0.05));
  CHECK(f.params.lambda == doctest::Approx(truth.lambda).epsilon(0.05));
  CHECK(f.ks_statistic < 0.01);
  CHECK(f.log_likelihood >= f.initial_log_likelihood);
  CHECK(f.converged);
}

TEST_CASE("fit of a normal sample") {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> normal(5.0, 2.0);
  std::vector<double> v(100000);
  for (auto& x : v) x = normal(rng);
  const JohnsonFit f = fit(v);
  const double mean = integrate(f.params, [](double x) { return x; });
  auto central = [&](int k) { return integrate(f.params, [&](double x) { return std::pow(x - mean, k); }); };
  const double c2 = central(2);
  CHECK(std::abs(central(3) / std::pow(c2, 1.5)) < 0.05);
  CHECK(std::abs(central(4) / (c2 * c2) - 3.0) < 0.1);
  CHECK(f.ks_statistic < 0.01);
}

TEST_CASE("fit recovers SB and SL samples") {
  const JohnsonParams sb = make(JohnsonFamily::SB, 0.5, 1.5, 2, 6);
  const JohnsonFit fb = fit(sample(sb, 50000, 8));
  CHECK(fb.params.family == JohnsonFamily::SB);
  CHECK(fb.ks_statistic < 0.01);
  CHECK(fb.log_likelihood >= fb.initial_log_likelihood);

  const JohnsonParams sl = make(JohnsonFamily::SL, 0.3, 1.2, 1, 1);
  const JohnsonFit fl = fit(sample(sl, 50000, 9));
  CHECK(fl.ks_statistic < 0.01);
  CHECK(fl.log_likelihood >= fl.initial_log_likelihood);
}

TEST_CASE("iteration cap returns the best point found, flagged") {
  FitOptions options;
  options.max_iterations = 5;
  const JohnsonFit f = fit(sample(make(JohnsonFamily::SU, -1, 2, 10, 3), 5000, 2), options);
  CHECK_FALSE(f.converged);
  CHECK(f.log_likelihood >= f.initial_log_likelihood);
  CHECK(f.ks_statistic >= 0.0);
  CHECK(f.ks_statistic <= 1.0);
}

TEST_CASE("degenerate samples") {
  CHECK_THROWS_AS(fit(std::vector<double>(50, 1.0)), DegenerateSampleError);
  CHECK_THROWS_AS(fit(std::vector<double>(500, 1.0)), DegenerateSampleError);
  std::vector<double> two_point(500, 1.0);
  for (std::size_t i = 0; i < two_point.size(); i += 2) two_point[i] = 2.0;
  CHECK_THROWS_AS(fit(two_point), DegenerateSampleError);
}

TEST_CASE("family names") {
  for (auto f : {JohnsonFamily::SL, JohnsonFamily::SU, JohnsonFamily::SB}) CHECK(parse_family(family_name(f)) == f);
  CHECK_THROWS_AS(parse_family("SN"), ParameterError);
}
