#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "ota/errors.hpp"
#include "ota/numerics/erlang.hpp"
#include "ota/numerics/rng.hpp"
#include "ota/numerics/sampling.hpp"
#include "ota/numerics/statistics.hpp"

using namespace ota;

TEST_CASE("rng streams are reproducible and separated") {
  RngStream a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::vector<std::uint64_t> xa, xb, xc, xd;
  for (int i = 0; i < 16; ++i) {
    xa.push_back(a());
    xb.push_back(b());
    xc.push_back(c());
    xd.push_back(d());
  }
  CHECK(xa == xb);
  CHECK(xa != xc);
  CHECK(xa != xd);
  CHECK(mix_stream_id({1, 2}) != mix_stream_id({2, 1}));
}

TEST_CASE("uniform stays in (0, 1]") {
  RngStream r(1, 1);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u <= 1.0);
  }
}

TEST_CASE("complex gaussian moments") {
  RngStream r(11, 2);
  const std::size_t n = 200000;
  const ComplexVector z = sample_complex_gaussian(n, 2.5, r);
  double re2 = 0, im2 = 0, cross = 0;
  cplx mean = 0;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    re2 += z(i).real() * z(i).real();
    im2 += z(i).imag() * z(i).imag();
    cross += z(i).real() * z(i).imag();
    mean += z(i);
  }
  const double nn = static_cast<double>(n);
  // each component has variance 1.25; SE of a second moment ~ 1.25*sqrt(2/n)
  const double se = 1.25 * std::sqrt(2.0 / nn);
  CHECK(std::abs(re2 / nn - 1.25) < 4 * se);
  CHECK(std::abs(im2 / nn - 1.25) < 4 * se);
  CHECK(std::abs(cross / nn) < 4 * 1.25 / std::sqrt(nn));
  CHECK(std::abs(mean / nn) < 4 * std::sqrt(2.5 / nn));
}

TEST_CASE("complex gaussian rejects bad arguments") {
  RngStream r(1, 1);
  CHECK_THROWS_AS(sample_complex_gaussian(0, 1.0, r), ParameterError);
  CHECK_THROWS_AS(sample_complex_gaussian(3, 0.0, r), ParameterError);
}

TEST_CASE("haar unitary is unitary") {
  RngStream r(5, 5);
  for (std::size_t n : {1u, 2u, 7u, 64u, 200u}) {
    const ComplexMatrix u = sample_haar_unitary(n, r);
    const auto id = ComplexMatrix::Identity(u.rows(), u.cols());
    CHECK((u.adjoint() * u - id).norm() < 1e-9);
    CHECK((u * u.adjoint() - id).norm() < 1e-9);
  }
}

TEST_CASE("haar eigenphases are uniform") {
  // Pooled eigenphases of Haar unitaries are uniform on (-pi, pi].
  RngStream r(99, 1);
  std::vector<double> phases;
  for (int t = 0; t < 400; ++t) {
    const ComplexMatrix u = sample_haar_unitary(8, r);
    const Eigen::ComplexEigenSolver<ComplexMatrix> es(u);
    for (Eigen::Index i = 0; i < 8; ++i) phases.push_back(std::arg(es.eigenvalues()(i)));
  }
  // Use one phase per matrix to keep the sample i.i.d.
  std::vector<double> first;
  for (std::size_t i = 0; i < phases.size(); i += 8) first.push_back(phases[i]);
  const auto ks = ks_one_sample(first, [](double x) {
    return std::clamp((x + std::numbers::pi) / (2 * std::numbers::pi), 0.0, 1.0);
  });
  CHECK(ks.pass);
}

TEST_CASE("haar first entry has the Beta(1, n-1) law of |u_11|^2") {
  // |u_11|^2 of an n x n Haar unitary has CDF 1 - (1 - x)^(n-1).
  RngStream r(3, 3);
  const int n = 6;
  std::vector<double> xs;
  for (int t = 0; t < 3000; ++t) xs.push_back(std::norm(sample_haar_unitary(n, r)(0, 0)));
  const auto ks = ks_one_sample(xs, [](double x) { return 1.0 - std::pow(1.0 - x, 5); });
  CHECK(ks.pass);
}

TEST_CASE("split isometry matches Householder construction in law and is orthonormal") {
  RngStream r(8, 8);
  for (auto [rows, cols] : {std::pair{50u, 3u}, std::pair{20u, 20u}, std::pair{1010u, 10u}}) {
    const ComplexMatrix q = sample_haar_isometry_split(rows, cols, r).to_dense();
    CHECK((q.adjoint() * q - ComplexMatrix::Identity(cols, cols)).norm() < 1e-9);
  }
  std::vector<double> a, b;
  for (int t = 0; t < 2000; ++t) {
    a.push_back(std::norm(sample_haar_isometry_split(12, 3, r).at(0, 0)));
    b.push_back(std::norm(sample_haar_isometry(12, 3, r)(0, 0)));
  }
  CHECK(ks_two_sample(a, b).pass);
}

TEST_CASE("sampling without replacement") {
  RngStream r(4, 4);
  const auto idx = sample_without_replacement(1010, 10, r);
  CHECK(idx.size() == 10);
  CHECK(std::is_sorted(idx.begin(), idx.end()));
  CHECK(std::set<std::size_t>(idx.begin(), idx.end()).size() == 10);
  CHECK(idx.back() < 1010);
  std::vector<int> hits(5, 0);
  for (int t = 0; t < 20000; ++t)
    for (auto i : sample_without_replacement(5, 2, r)) ++hits[i];
  for (int h : hits) CHECK(std::abs(h / 20000.0 - 0.4) < 0.015);
}

TEST_CASE("erlang tail and quantile against reference values") {
  CHECK(erlang_tail(10.0, 10, 1.0) == doctest::Approx(0.4579297144718523).epsilon(1e-12));
  CHECK(erlang_tail(0.0, 3, 2.0) == 1.0);
  const std::pair<std::size_t, double> ref[] = {{1, 4.605170185988091},
                                                {5, 11.60462557947718},
                                                {10, 18.783117393312523},
                                                {100, 124.7225614907208},
                                                {500, 553.4844971761087}};
  for (auto [shape, x] : ref) {
    CHECK(erlang_quantile(0.01, shape, 1.0) == doctest::Approx(x).epsilon(1e-9));
    CHECK(erlang_quantile(0.01, shape, 3.0) == doctest::Approx(3 * x).epsilon(1e-9));
    CHECK(erlang_tail(erlang_quantile(0.01, shape, 1.0), shape, 1.0) ==
          doctest::Approx(0.01).epsilon(1e-9));
  }
  CHECK(erlang_quantile(0.5, 1, 1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(erlang_quantile(0.0, 1, 1.0), ParameterError);
  CHECK_THROWS_AS(erlang_quantile(1.0, 1, 1.0), ParameterError);
  CHECK_THROWS_AS(erlang_tail(1.0, 0, 1.0), ParameterError);
  CHECK_THROWS_AS(erlang_tail(1.0, 1, 0.0), ParameterError);
}

TEST_CASE("gamma sampler matches its Erlang law") {
  RngStream r(12, 1);
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(sample_gamma(4.0, r));
  CHECK(ks_one_sample(xs, [](double x) { return x <= 0 ? 0.0 : 1.0 - erlang_tail(x, 4, 1.0); }).pass);
}

TEST_CASE("statistics helpers") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto s = summarize(xs);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance == doctest::Approx(5.0 / 3.0));
  CHECK(s.se_mean == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(kolmogorov_critical(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(kolmogorov_tail(kolmogorov_critical(0.05)) == doctest::Approx(0.05).epsilon(1e-9));

  RngStream r(2, 2);
  std::vector<double> u(5000), v(5000);
  r.fill_uniform(u);
  r.fill_uniform(v);
  CHECK(ks_one_sample(u, [](double x) { return std::clamp(x, 0.0, 1.0); }).pass);
  CHECK(ks_two_sample(u, v).pass);
  for (double& x : v) x = x * x;
  CHECK_FALSE(ks_two_sample(u, v).pass);
  CHECK(std::abs(autocorrelation_lag1(u)) < 3.0 / std::sqrt(5000.0));
}
