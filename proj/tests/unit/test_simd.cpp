#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ota/errors.hpp"
#include "ota/experiments/trial.hpp"
#include "ota/numerics/rng.hpp"
#include "ota/simd/kernels.hpp"

using namespace ota;
using simd::KernelTable;

namespace {

struct Planes {
  std::vector<double> re, im;
  explicit Planes(std::size_t n, RngStream& r) : re(n), im(n) {
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = 2.0 * r.uniform() - 1.0;
      im[i] = 2.0 * r.uniform() - 1.0;
    }
  }
};

const KernelTable* vector_table() { return simd::avx2_kernels(); }

double rel(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

TEST_CASE("scalar reference kernels") {
  const auto& k = simd::scalar_kernels();
  const double re[] = {3, 1, 0}, im[] = {4, 0, 1};
  CHECK(k.sum_abs2(re, im, 3) == 27.0);
  CHECK(k.max_abs2(re, im, 3) == 25.0);
  CHECK(k.max_abs2(re, im, 0) == 0.0);
  double o_re = 0, o_im = 0;
  // conj(3+4i)(3+4i) + conj(1)(1) + conj(i)(i)
  k.cdotc(3, re, im, re, im, &o_re, &o_im);
  CHECK(o_re == 27.0);
  CHECK(o_im == 0.0);
  double y_re[] = {1, 1, 1}, y_im[] = {0, 0, 0};
  k.caxpy(3, 0.0, 1.0, re, im, y_re, y_im);  // y += i x
  CHECK(y_re[0] == -3.0);
  CHECK(y_im[0] == 3.0);
  k.cscal(3, 2.0, 0.0, y_re, y_im);
  CHECK(y_re[0] == -6.0);
  const double u1[] = {std::exp(-1.0)}, u2[] = {0.25};
  double z_re, z_im;
  k.box_muller(u1, u2, &z_re, &z_im, 1, 2.0);
  CHECK(z_re == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(z_im == doctest::Approx(2.0));
}

TEST_CASE("avx2 kernels agree with the scalar reference") {
  const KernelTable* v = vector_table();
  if (v == nullptr) {
    MESSAGE("AVX2 kernels unavailable; equivalence not exercised");
    return;
  }
  const auto& s = simd::scalar_kernels();
  RngStream r(17, 1);
  for (std::size_t n = 0; n <= 67; ++n) {
    CAPTURE(n);
    Planes x(n, r), y(n, r);
    CHECK(rel(s.sum_abs2(x.re.data(), x.im.data(), n),
              v->sum_abs2(x.re.data(), x.im.data(), n)) < 1e-13);
    CHECK(s.max_abs2(x.re.data(), x.im.data(), n) ==
          doctest::Approx(v->max_abs2(x.re.data(), x.im.data(), n)).epsilon(1e-15));

    double a_re, a_im, b_re, b_im;
    s.cdotc(n, x.re.data(), x.im.data(), y.re.data(), y.im.data(), &a_re, &a_im);
    v->cdotc(n, x.re.data(), x.im.data(), y.re.data(), y.im.data(), &b_re, &b_im);
    CHECK(std::abs(a_re - b_re) < 1e-13 * (1.0 + n));
    CHECK(std::abs(a_im - b_im) < 1e-13 * (1.0 + n));

    Planes ys = y, yv = y;
    s.caxpy(n, 0.3, -1.7, x.re.data(), x.im.data(), ys.re.data(), ys.im.data());
    v->caxpy(n, 0.3, -1.7, x.re.data(), x.im.data(), yv.re.data(), yv.im.data());
    s.cscal(n, -0.2, 0.9, ys.re.data(), ys.im.data());
    v->cscal(n, -0.2, 0.9, yv.re.data(), yv.im.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(ys.re[i] - yv.re[i]) < 1e-14);
      CHECK(std::abs(ys.im[i] - yv.im[i]) < 1e-14);
    }

    std::vector<double> u1(n), u2(n);
    for (std::size_t i = 0; i < n; ++i) {
      u1[i] = r.uniform();
      u2[i] = r.uniform();
    }
    std::vector<double> sr(n), si(n), vr(n), vi(n);
    s.box_muller(u1.data(), u2.data(), sr.data(), si.data(), n, 1.5);
    v->box_muller(u1.data(), u2.data(), vr.data(), vi.data(), n, 1.5);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(sr[i] - vr[i]) < 1e-12);
      CHECK(std::abs(si[i] - vi[i]) < 1e-12);
    }
  }
}

TEST_CASE("vector box-muller is accurate over the whole unit grid edge cases") {
  const KernelTable* v = vector_table();
  if (v == nullptr) return;
  const auto& s = simd::scalar_kernels();
  // Extremes of u1, octant boundaries of u2.
  std::vector<double> u1, u2;
  for (double a : {0x1.0p-53, 1e-12, 1e-6, 0.5, 1.0 - 0x1.0p-53, 1.0})
    for (int j = 0; j <= 16; ++j) {
      u1.push_back(a);
      u2.push_back(j / 16.0 == 0.0 ? 0x1.0p-53 : j / 16.0);
    }
  const std::size_t n = u1.size();
  std::vector<double> sr(n), si(n), vr(n), vi(n);
  s.box_muller(u1.data(), u2.data(), sr.data(), si.data(), n, 1.0);
  v->box_muller(u1.data(), u2.data(), vr.data(), vi.data(), n, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    CAPTURE(u1[i]);
    CAPTURE(u2[i]);
    CHECK(std::abs(sr[i] - vr[i]) < 1e-12);
    CHECK(std::abs(si[i] - vi[i]) < 1e-12);
  }
}

TEST_CASE("set_isa switches the active table") {
  simd::set_isa(simd::Isa::kScalar);
  CHECK(simd::active().isa == simd::Isa::kScalar);
  if (vector_table() != nullptr) {
    simd::set_isa(simd::Isa::kAvx2);
    CHECK(simd::active().isa == simd::Isa::kAvx2);
  } else {
    CHECK_THROWS_AS(simd::set_isa(simd::Isa::kAvx2), ParameterError);
  }
}

TEST_CASE("trial outcomes agree across kernel sets") {
  if (vector_table() == nullptr) return;
  experiments::SystemConfig c;
  c.threads = 1;
  for (auto scheme : {SchemeKind::kCorrelated, SchemeKind::kUncorrelated}) {
    c.scheme = scheme;
    for (std::uint64_t b = 0; b < 5; ++b) {
      for (auto h : {Hypothesis::kH0, Hypothesis::kH1}) {
        simd::set_isa(simd::Isa::kScalar);
        const auto a = experiments::run_trial(c, h, b);
        simd::set_isa(simd::Isa::kAvx2);
        const auto v = experiments::run_trial(c, h, b);
        CHECK(a.statistic == doctest::Approx(v.statistic).epsilon(1e-9));
        CHECK(a.eta == doctest::Approx(v.eta).epsilon(1e-9));
      }
    }
  }
}
