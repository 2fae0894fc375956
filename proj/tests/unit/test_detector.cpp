#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ota/detector.hpp"
#include "ota/errors.hpp"
#include "ota/numerics/erlang.hpp"
#include "ota/numerics/sampling.hpp"
#include "ota/numerics/statistics.hpp"

using namespace ota;

TEST_CASE("energy statistic") {
  ComplexVector a(1);
  a << cplx(3, 4);
  CHECK(energy_statistic(a) == 25.0);
  ComplexVector b(2);
  b << 1.0, cplx(0, 1);
  CHECK(energy_statistic(b) == 2.0);
  CHECK(energy_statistic(ComplexVector::Zero(5)) == 0.0);
  CHECK_THROWS_AS(energy_statistic(ComplexVector(0)), ParameterError);
  const double re[] = {3.0}, im[] = {4.0};
  CHECK(energy_statistic(re, im, 1) == 25.0);
}

TEST_CASE("threshold calibration") {
  CHECK(calibrate_threshold(1.0, 1, 0.01) == doctest::Approx(4.605170185988091).epsilon(1e-10));
  const double g1 = calibrate_threshold(1.0, 10, 0.01);
  CHECK(calibrate_threshold(7.5, 10, 0.01) == doctest::Approx(7.5 * g1).epsilon(1e-12));
  CHECK_THROWS_AS(calibrate_threshold(1.0, 10, 0.0), ParameterError);
  CHECK_THROWS_AS(calibrate_threshold(1.0, 10, 1.0), ParameterError);
}

TEST_CASE("calibration exactness under the H0 model") {
  RngStream r(1, 1);
  const double s2 = 2.5e-6;
  const int n = 100000;
  for (std::size_t D : {1u, 5u, 10u, 50u, 500u}) {
    CAPTURE(D);
    const double gamma = calibrate_threshold(s2, D, 0.01);
    int alarms = 0;
    for (int t = 0; t < n; ++t) {
      const ComplexVector y = sample_complex_gaussian(D, s2, r);
      alarms += decide(energy_statistic(y), gamma).verdict == Hypothesis::kH1 ? 1 : 0;
    }
    const double pf = alarms / double(n);
    CHECK(std::abs(pf - 0.01) <= 3 * std::sqrt(0.01 * 0.99 / n));
  }
}

TEST_CASE("H0 energy follows the Erlang law") {
  RngStream r(2, 2);
  const std::size_t D = 10;
  std::vector<double> xs;
  for (int t = 0; t < 100000; ++t) xs.push_back(energy_statistic(sample_complex_gaussian(D, 0.4, r)));
  CHECK(ks_one_sample(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - erlang_tail(x, 10, 0.4); }).pass);
}

TEST_CASE("decision rule") {
  CHECK(decide(25.0, 4.6).verdict == Hypothesis::kH1);
  CHECK(decide(0.0, 4.6).verdict == Hypothesis::kH0);
  CHECK(decide(4.6, 4.6).verdict == Hypothesis::kH0);
  CHECK_THROWS_AS(decide(1.0, -1.0), ParameterError);
}

TEST_CASE("closed-form moments") {
  for (std::size_t D : {1u, 4u, 30u}) {
    const auto st = theoretical_moments(1.0, 1.0, 0.0, D, 0.0);
    CHECK(st.mean_h0 == D);
    CHECK(st.var_h0 == D);
    CHECK(st.mean_h1 == D);
    CHECK(st.var_h1 == D);
  }
  const auto st = theoretical_moments(1.0, 1.0, 1.0, 1, 0.0);
  CHECK(st.mean_h0 == 1.0);
  CHECK(st.var_h0 == 1.0);
  CHECK(st.mean_h1 == 2.0);
  CHECK(st.var_h1 == 6.0);
  CHECK(st.deflection == doctest::Approx(std::sqrt(1.0 / 6.0)).epsilon(1e-15));

  const auto u = theoretical_moments(2.0, 2.0, 3.0, 5, 0.25, 0.5);
  const double s = 0.5 + 0.25, a = 1.5 / 4.0;
  CHECK(u.sigma_tilde2 == s);
  CHECK(u.mean_h1 == doctest::Approx(5 * (s + a)));
  CHECK(u.var_h1 == doctest::Approx(5 * (s * s + 2 * s * a + 2 * a * a) + 25 * a * a));
  CHECK(u.mean_h1 >= u.mean_h0);
  CHECK_THROWS_AS(theoretical_moments(0.0, 1.0, 1.0, 1, 0.0), ParameterError);
  CHECK_THROWS_AS(theoretical_moments(1.0, 1.0, 1.0, 0, 0.0), ParameterError);
}

TEST_CASE("H1 moments match a direct simulation of the conditional model") {
  // y_i = (h_b b_i + z_i) / eta with |h_b|^2 ~ Exp(beta), shared across i.
  RngStream r(3, 3);
  const double sigma2 = 0.5, eta = 1.5, beta = 2.0;
  const std::size_t D = 6;
  std::vector<double> xs;
  for (int t = 0; t < 200000; ++t) {
    const cplx hb = sample_complex_gaussian(1, beta, r)(0);
    const ComplexVector b = sample_complex_gaussian(D, 1.0, r);
    const ComplexVector z = sample_complex_gaussian(D, sigma2, r);
    xs.push_back(energy_statistic(ComplexVector((hb * b + z) / eta)));
  }
  const auto s = summarize(xs);
  const auto st = theoretical_moments(sigma2, eta, beta, D, 0.0);
  CHECK(std::abs(s.mean - st.mean_h1) < 3 * s.se_mean);
  CHECK(std::abs(s.variance - st.var_h1) < 3 * s.se_variance);
}

TEST_CASE("deflection closed form equals the moment ratio") {
  CHECK(deflection_coefficient(1.0, 1.0, 1) == doctest::Approx(0.408248290463863).epsilon(1e-14));
  CHECK(deflection_coefficient(1e-12, 1.0, 1000000) > 0.999);
  double worst = 0.0;
  // sigma^2 / beta up to 1e3: beyond that mean_h1 - mean_h0 loses digits to
  // cancellation in double precision.
  for (double ratio : {1e-8, 1e-3, 0.1, 1.0, 10.0, 1e3})
    for (double beta : {1e-8, 1e-3, 0.5, 1.0, 100.0})
      for (std::size_t D : {1u, 2u, 10u, 100u, 1000u})
        for (double eta : {1e-4, 1.0, 37.0}) {
          const double sigma2 = ratio * beta;
          const double closed = deflection_coefficient(sigma2, beta, D);
          const double from = deflection_from_moments(theoretical_moments(sigma2, eta, beta, D, 0.0));
          worst = std::max(worst, std::abs(closed - from) / closed);
          CHECK(closed > 0.0);
          CHECK(closed < 1.0);
        }
  CHECK(worst < 1e-12);
  // Monotone in D and in beta / sigma^2.
  CHECK(deflection_coefficient(1.0, 1.0, 10) > deflection_coefficient(1.0, 1.0, 5));
  CHECK(deflection_coefficient(1.0, 2.0, 10) > deflection_coefficient(1.0, 1.0, 10));
  CHECK_THROWS_AS(deflection_coefficient(1.0, 0.0, 1), ParameterError);
}
