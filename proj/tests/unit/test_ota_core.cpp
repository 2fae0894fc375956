#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ota/channel.hpp"
#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"
#include "ota/numerics/statistics.hpp"
#include "ota/ota_core.hpp"

using namespace ota;

namespace {

ChannelRealization channels(std::vector<cplx> h) {
  ChannelRealization ch;
  ch.g = h;
  ch.h = h;
  ch.participation.assign(h.size(), true);
  ch.k_active = h.size();
  ch.h_b = {0.5, -0.25};
  ch.beta = 1.0;
  return ch;
}

}  // namespace

TEST_CASE("precode") {
  ComplexVector x(1);
  x << 1.0;
  CHECK(precode(x, 1.0, 2.0, 2)(0) == cplx(1.0, 0.0));
  RngStream r(1, 1);
  const ComplexVector v = sample_complex_gaussian(16, 1.0, r);
  const cplx h{0.3, -0.8};
  const ComplexVector s = precode(v, h, 1.7, 5);
  for (Eigen::Index i = 0; i < v.size(); ++i)
    CHECK(std::abs(h * s(i) - v(i) * 1.7 / 5.0) < 1e-14);
  CHECK(precode(ComplexVector::Zero(4), h, 1.0, 3).norm() == 0.0);
  CHECK_THROWS_AS(precode(v, 0.0, 1.0, 1), ParameterError);
  CHECK_THROWS_AS(precode(v, h, 0.0, 1), ParameterError);
}

TEST_CASE("superposition computes the arithmetic mean") {
  const auto ch = channels({{0.7, 0.1}, {-0.2, 0.9}});
  const double eta = 1.3;
  ComplexMatrix x(1, 2);
  x << 2.0, 4.0;
  TransmitBlock tx{precode_block(x, ch, eta), ComplexVector::Zero(1)};
  RngStream r(2, 2);
  const ComplexVector y = postprocess(superpose(tx, ch, 1e-30, r), eta);
  CHECK(std::abs(y(0) - cplx(3.0, 0.0)) < 1e-12);
  CHECK_THROWS_AS(superpose(tx, ch, 0.0, r), ParameterError);
}

TEST_CASE("noise-only channel") {
  const auto ch = channels({{1.0, 0.0}});
  TransmitBlock tx{ComplexMatrix::Zero(100000, 1), ComplexVector::Zero(100000)};
  RngStream r(3, 3);
  const ComplexVector y = superpose(tx, ch, 2.0, r);
  std::vector<double> p(static_cast<std::size_t>(y.size()));
  for (Eigen::Index i = 0; i < y.size(); ++i) p[static_cast<std::size_t>(i)] = std::norm(y(i));
  const auto s = summarize(p);
  CHECK(std::abs(s.mean - 2.0) < 3 * s.se_mean);
}

TEST_CASE("postprocess") {
  ComplexVector y(1);
  y << cplx(2.0, 2.0);
  CHECK(postprocess(y, 2.0)(0) == cplx(1.0, 1.0));
  CHECK(postprocess(y, 1.0)(0) == y(0));
  CHECK_THROWS_AS(postprocess(y, 0.0), ParameterError);
}

TEST_CASE("end-to-end unbiasedness, noise law and power compliance") {
  RngStream r(4, 4);
  const Geometry g = place_nodes(8, 100.0, r);
  const auto ch = realize_channels(g, r, 0.2);
  const std::size_t ka = ch.k_active;
  const double sigma2 = 1e-14, per_symbol = 1e-3;
  const ComplexMatrix x = sample_ginibre(4, ka, 1.0, r);
  std::vector<double> peaks(8, 0.0);
  const auto users = ch.active_users();
  for (std::size_t k = 0; k < ka; ++k)
    peaks[users[k]] = std::sqrt(x.col(static_cast<Eigen::Index>(k)).cwiseAbs2().maxCoeff());
  const double eta = amplitude_scaling_factor(ch, peaks, per_symbol);
  const ComplexMatrix s = precode_block(x, ch, eta);
  CHECK(s.cwiseAbs2().maxCoeff() <= per_symbol + 1e-12);

  const ComplexVector mean = x.rowwise().sum() / static_cast<double>(ka);
  TransmitBlock tx{s, ComplexVector::Zero(4)};
  const int trials = 100000;
  std::vector<double> err2;
  ComplexVector acc = ComplexVector::Zero(4);
  for (int t = 0; t < trials; ++t) {
    const ComplexVector y = postprocess(superpose(tx, ch, sigma2, r), eta);
    acc += y;
    err2.push_back(std::norm(y(0) - mean(0)));
  }
  const double eff = sigma2 / (eta * eta);
  const auto st = summarize(err2);
  CHECK(std::abs(st.mean - eff) < 3 * st.se_mean);
  for (Eigen::Index i = 0; i < 4; ++i) {
    const cplx bias = acc(i) / static_cast<double>(trials) - mean(i);
    // each component of the average has SE sqrt(eff / 2 / trials)
    CHECK(std::abs(bias.real()) < 3 * std::sqrt(eff / 2 / trials) + 1e-12);
    CHECK(std::abs(bias.imag()) < 3 * std::sqrt(eff / 2 / trials) + 1e-12);
  }
}

TEST_CASE("superposition is linear in the attack") {
  const auto ch = channels({{1.0, 0.5}});
  RngStream r(5, 5);
  const ComplexVector b = sample_complex_gaussian(6, 1.0, r);
  TransmitBlock t1{ComplexMatrix::Zero(6, 1), b};
  TransmitBlock t2{ComplexMatrix::Zero(6, 1), 2.0 * b};
  RngStream n1(9, 9), n2(9, 9), n0(9, 9);
  TransmitBlock t0{ComplexMatrix::Zero(6, 1), ComplexVector::Zero(6)};
  const ComplexVector y0 = superpose(t0, ch, 1.0, n0);
  const ComplexVector y1 = superpose(t1, ch, 1.0, n1);
  const ComplexVector y2 = superpose(t2, ch, 1.0, n2);
  CHECK(((y2 - y0) - 2.0 * (y1 - y0)).norm() < 1e-12);
  CHECK(((y1 - y0) - ch.h_b * b).norm() < 1e-12);
}
