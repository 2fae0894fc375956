#include <algorithm>
#include <cmath>
#include <numbers>

#include "ota/simd/kernels.hpp"

namespace ota::simd {
namespace {

void box_muller(const double* u1, const double* u2, double* re, double* im,
                std::size_t n, double scale) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = scale * std::sqrt(-std::log(u1[i]));
    const double theta = kTwoPi * u2[i];
    re[i] = r * std::cos(theta);
    im[i] = r * std::sin(theta);
  }
}

double sum_abs2(const double* re, const double* im, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += re[i] * re[i] + im[i] * im[i];
  return acc;
}

double max_abs2(const double* re, const double* im, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    best = std::max(best, re[i] * re[i] + im[i] * im[i]);
  return best;
}

void caxpy(std::size_t n, double a_re, double a_im, const double* x_re,
           const double* x_im, double* y_re, double* y_im) {
  for (std::size_t i = 0; i < n; ++i) {
    y_re[i] += a_re * x_re[i] - a_im * x_im[i];
    y_im[i] += a_re * x_im[i] + a_im * x_re[i];
  }
}

void cdotc(std::size_t n, const double* x_re, const double* x_im,
           const double* y_re, const double* y_im, double* out_re,
           double* out_im) {
  double sr = 0.0;
  double si = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sr += x_re[i] * y_re[i] + x_im[i] * y_im[i];
    si += x_re[i] * y_im[i] - x_im[i] * y_re[i];
  }
  *out_re = sr;
  *out_im = si;
}

void cscal(std::size_t n, double a_re, double a_im, double* x_re,
           double* x_im) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = x_re[i];
    const double m = x_im[i];
    x_re[i] = a_re * r - a_im * m;
    x_im[i] = a_re * m + a_im * r;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::kScalar, "scalar", box_muller, sum_abs2,
                                 max_abs2,     caxpy,    cdotc,      cscal};
  return table;
}

}  // namespace ota::simd
