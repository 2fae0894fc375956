// Compiled with -mavx2 -mfma. Only raw loops and intrinsics live here: no
// standard-library templates are instantiated, so nothing built for AVX2 can
// leak into the baseline objects through the linker.

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "ota/simd/kernels.hpp"

namespace ota::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(m, _mm_unpackhi_pd(m, m)));
}

// Natural log for arguments in (0, 1] (normal doubles only).
// x = m * 2^e with m in [sqrt(1/2), sqrt(2)); log m = 2 atanh(s), s = (m-1)/(m+1).
inline __m256d log_unit(__m256d x) {
  const __m256i bits = _mm256_castpd_si256(x);
  const __m256i mant_mask = _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL);
  const __m256i one_bits = _mm256_set1_epi64x(0x3FF0000000000000LL);
  __m256d m = _mm256_castsi256_pd(
      _mm256_or_si256(_mm256_and_si256(bits, mant_mask), one_bits));

  // Biased exponent -> double via the 2^52 magic constant.
  const __m256i magic = _mm256_set1_epi64x(0x4330000000000000LL);
  const __m256i ebits = _mm256_or_si256(_mm256_srli_epi64(bits, 52), magic);
  __m256d e = _mm256_sub_pd(_mm256_castsi256_pd(ebits),
                            _mm256_set1_pd(4503599627370496.0 + 1023.0));

  const __m256d big = _mm256_cmp_pd(m, _mm256_set1_pd(1.4142135623730951),
                                    _CMP_GT_OQ);
  m = _mm256_blendv_pd(m, _mm256_mul_pd(m, _mm256_set1_pd(0.5)), big);
  e = _mm256_add_pd(e, _mm256_and_pd(big, _mm256_set1_pd(1.0)));

  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d s =
      _mm256_div_pd(_mm256_sub_pd(m, one), _mm256_add_pd(m, one));
  const __m256d z = _mm256_mul_pd(s, s);

  __m256d p = _mm256_set1_pd(1.0 / 23.0);
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 21.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 19.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 17.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 15.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 13.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 11.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 9.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 7.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 5.0));
  p = _mm256_fmadd_pd(p, z, _mm256_set1_pd(1.0 / 3.0));
  // log m = 2s + 2s*z*p
  const __m256d two_s = _mm256_add_pd(s, s);
  const __m256d log_m = _mm256_fmadd_pd(_mm256_mul_pd(two_s, z), p, two_s);

  const __m256d ln2_hi = _mm256_set1_pd(0.693145751953125);
  const __m256d ln2_lo = _mm256_set1_pd(1.42860682030941723212e-6);
  return _mm256_fmadd_pd(e, ln2_hi, _mm256_fmadd_pd(e, ln2_lo, log_m));
}

// sin and cos on [0, pi/4] by Taylor series (truncation below 1e-17).
inline void sincos_octant(__m256d x, __m256d* s, __m256d* c) {
  const __m256d z = _mm256_mul_pd(x, x);

  __m256d ps = _mm256_set1_pd(1.0 / 355687428096000.0);
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 1307674368000.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 6227020800.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 39916800.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 362880.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 5040.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(1.0 / 120.0));
  ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.0 / 6.0));
  *s = _mm256_fmadd_pd(_mm256_mul_pd(x, z), ps, x);

  __m256d pc = _mm256_set1_pd(-1.0 / 6402373705728000.0);
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 20922789888000.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 87178291200.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 479001600.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 3628800.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 40320.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.0 / 720.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(1.0 / 24.0));
  pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-0.5));
  *c = _mm256_fmadd_pd(z, pc, _mm256_set1_pd(1.0));
}

inline __m256d lane_mask(__m128i bit01) {
  return _mm256_castsi256_pd(
      _mm256_cvtepi32_epi64(_mm_sub_epi32(_mm_setzero_si128(), bit01)));
}

// (cos, sin) of 2*pi*u for u in [0, 1]. The octant index comes straight from
// 8u, so no argument reduction error is introduced.
inline void sincos_turns(__m256d u, __m256d* s_out, __m256d* c_out) {
  const __m256d t = _mm256_mul_pd(u, _mm256_set1_pd(8.0));
  const __m256d jd = _mm256_floor_pd(t);
  const __m256d f = _mm256_sub_pd(t, jd);
  const __m128i j = _mm256_cvttpd_epi32(jd);
  const __m128i one = _mm_set1_epi32(1);

  const __m256d odd = lane_mask(_mm_and_si128(j, one));
  const __m256d swap = lane_mask(
      _mm_and_si128(_mm_srli_epi32(_mm_add_epi32(j, one), 1), one));
  const __m256d cneg = lane_mask(_mm_and_si128(
      _mm_srli_epi32(_mm_add_epi32(j, _mm_set1_epi32(2)), 2), one));
  const __m256d sneg = lane_mask(_mm_and_si128(_mm_srli_epi32(j, 2), one));

  const __m256d frac =
      _mm256_blendv_pd(f, _mm256_sub_pd(_mm256_set1_pd(1.0), f), odd);
  const __m256d x = _mm256_mul_pd(frac, _mm256_set1_pd(0.78539816339744830962));
  __m256d s;
  __m256d c;
  sincos_octant(x, &s, &c);

  __m256d cos_v = _mm256_blendv_pd(c, s, swap);
  __m256d sin_v = _mm256_blendv_pd(s, c, swap);
  const __m256d sign = _mm256_set1_pd(-0.0);
  cos_v = _mm256_xor_pd(cos_v, _mm256_and_pd(cneg, sign));
  sin_v = _mm256_xor_pd(sin_v, _mm256_and_pd(sneg, sign));
  *c_out = cos_v;
  *s_out = sin_v;
}

void box_muller(const double* u1, const double* u2, double* re, double* im,
                std::size_t n, double scale) {
  const __m256d vscale = _mm256_set1_pd(scale);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_mul_pd(
        vscale,
        _mm256_sqrt_pd(_mm256_sub_pd(zero, log_unit(_mm256_loadu_pd(u1 + i)))));
    __m256d s;
    __m256d c;
    sincos_turns(_mm256_loadu_pd(u2 + i), &s, &c);
    _mm256_storeu_pd(re + i, _mm256_mul_pd(r, c));
    _mm256_storeu_pd(im + i, _mm256_mul_pd(r, s));
  }
  if (i < n) {
    alignas(32) double a[4] = {1.0, 1.0, 1.0, 1.0};
    alignas(32) double b[4] = {0.0, 0.0, 0.0, 0.0};
    alignas(32) double outr[4];
    alignas(32) double outi[4];
    for (std::size_t k = 0; i + k < n; ++k) {
      a[k] = u1[i + k];
      b[k] = u2[i + k];
    }
    box_muller(a, b, outr, outi, 4, scale);
    for (std::size_t k = 0; i + k < n; ++k) {
      re[i + k] = outr[k];
      im[i + k] = outi[k];
    }
  }
}

double sum_abs2(const double* re, const double* im, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd();
  __m256d a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d r0 = _mm256_loadu_pd(re + i);
    const __m256d m0 = _mm256_loadu_pd(im + i);
    const __m256d r1 = _mm256_loadu_pd(re + i + 4);
    const __m256d m1 = _mm256_loadu_pd(im + i + 4);
    a0 = _mm256_fmadd_pd(r0, r0, a0);
    a0 = _mm256_fmadd_pd(m0, m0, a0);
    a1 = _mm256_fmadd_pd(r1, r1, a1);
    a1 = _mm256_fmadd_pd(m1, m1, a1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d r0 = _mm256_loadu_pd(re + i);
    const __m256d m0 = _mm256_loadu_pd(im + i);
    a0 = _mm256_fmadd_pd(r0, r0, a0);
    a0 = _mm256_fmadd_pd(m0, m0, a0);
  }
  double acc = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) acc += re[i] * re[i] + im[i] * im[i];
  return acc;
}

double max_abs2(const double* re, const double* im, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(re + i);
    const __m256d m = _mm256_loadu_pd(im + i);
    best = _mm256_max_pd(best, _mm256_fmadd_pd(r, r, _mm256_mul_pd(m, m)));
  }
  double out = hmax(best);
  for (; i < n; ++i) {
    const double v = re[i] * re[i] + im[i] * im[i];
    if (v > out) out = v;
  }
  return out;
}

void caxpy(std::size_t n, double a_re, double a_im, const double* x_re,
           const double* x_im, double* y_re, double* y_im) {
  const __m256d ar = _mm256_set1_pd(a_re);
  const __m256d ai = _mm256_set1_pd(a_im);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xr = _mm256_loadu_pd(x_re + i);
    const __m256d xi = _mm256_loadu_pd(x_im + i);
    __m256d yr = _mm256_loadu_pd(y_re + i);
    __m256d yi = _mm256_loadu_pd(y_im + i);
    yr = _mm256_fmadd_pd(ar, xr, yr);
    yr = _mm256_fnmadd_pd(ai, xi, yr);
    yi = _mm256_fmadd_pd(ar, xi, yi);
    yi = _mm256_fmadd_pd(ai, xr, yi);
    _mm256_storeu_pd(y_re + i, yr);
    _mm256_storeu_pd(y_im + i, yi);
  }
  for (; i < n; ++i) {
    const double xr = x_re[i];
    const double xi = x_im[i];
    y_re[i] += a_re * xr - a_im * xi;
    y_im[i] += a_re * xi + a_im * xr;
  }
}

void cdotc(std::size_t n, const double* x_re, const double* x_im,
           const double* y_re, const double* y_im, double* out_re,
           double* out_im) {
  __m256d sr0 = _mm256_setzero_pd();
  __m256d si0 = _mm256_setzero_pd();
  __m256d sr1 = _mm256_setzero_pd();
  __m256d si1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d xr0 = _mm256_loadu_pd(x_re + i);
    const __m256d xi0 = _mm256_loadu_pd(x_im + i);
    const __m256d yr0 = _mm256_loadu_pd(y_re + i);
    const __m256d yi0 = _mm256_loadu_pd(y_im + i);
    const __m256d xr1 = _mm256_loadu_pd(x_re + i + 4);
    const __m256d xi1 = _mm256_loadu_pd(x_im + i + 4);
    const __m256d yr1 = _mm256_loadu_pd(y_re + i + 4);
    const __m256d yi1 = _mm256_loadu_pd(y_im + i + 4);
    sr0 = _mm256_fmadd_pd(xr0, yr0, sr0);
    sr0 = _mm256_fmadd_pd(xi0, yi0, sr0);
    si0 = _mm256_fmadd_pd(xr0, yi0, si0);
    si0 = _mm256_fnmadd_pd(xi0, yr0, si0);
    sr1 = _mm256_fmadd_pd(xr1, yr1, sr1);
    sr1 = _mm256_fmadd_pd(xi1, yi1, sr1);
    si1 = _mm256_fmadd_pd(xr1, yi1, si1);
    si1 = _mm256_fnmadd_pd(xi1, yr1, si1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d xr0 = _mm256_loadu_pd(x_re + i);
    const __m256d xi0 = _mm256_loadu_pd(x_im + i);
    const __m256d yr0 = _mm256_loadu_pd(y_re + i);
    const __m256d yi0 = _mm256_loadu_pd(y_im + i);
    sr0 = _mm256_fmadd_pd(xr0, yr0, sr0);
    sr0 = _mm256_fmadd_pd(xi0, yi0, sr0);
    si0 = _mm256_fmadd_pd(xr0, yi0, si0);
    si0 = _mm256_fnmadd_pd(xi0, yr0, si0);
  }
  double sr = hsum(_mm256_add_pd(sr0, sr1));
  double si = hsum(_mm256_add_pd(si0, si1));
  for (; i < n; ++i) {
    sr += x_re[i] * y_re[i] + x_im[i] * y_im[i];
    si += x_re[i] * y_im[i] - x_im[i] * y_re[i];
  }
  *out_re = sr;
  *out_im = si;
}

void cscal(std::size_t n, double a_re, double a_im, double* x_re,
           double* x_im) {
  const __m256d ar = _mm256_set1_pd(a_re);
  const __m256d ai = _mm256_set1_pd(a_im);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(x_re + i);
    const __m256d m = _mm256_loadu_pd(x_im + i);
    _mm256_storeu_pd(x_re + i,
                     _mm256_fmsub_pd(ar, r, _mm256_mul_pd(ai, m)));
    _mm256_storeu_pd(x_im + i,
                     _mm256_fmadd_pd(ar, m, _mm256_mul_pd(ai, r)));
  }
  for (; i < n; ++i) {
    const double r = x_re[i];
    const double m = x_im[i];
    x_re[i] = a_re * r - a_im * m;
    x_im[i] = a_re * m + a_im * r;
  }
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{Isa::kAvx2, "avx2", box_muller, sum_abs2,
                             max_abs2,   caxpy,  cdotc,      cscal};
  return t;
}

}  // namespace ota::simd::avx2
