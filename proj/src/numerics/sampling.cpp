#include "ota/numerics/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "ota/errors.hpp"
#include "ota/simd/kernels.hpp"

namespace ota {

void fill_complex_gaussian(double* re, double* im, std::size_t n,
                           double variance, RngStream& rng) {
  detail::require(variance > 0.0, "complex Gaussian variance must be > 0");
  constexpr std::size_t kChunk = 256;
  std::array<double, kChunk> u1;
  std::array<double, kChunk> u2;
  const auto& k = simd::active();
  const double scale = std::sqrt(variance);
  for (std::size_t off = 0; off < n; off += kChunk) {
    const std::size_t len = std::min(kChunk, n - off);
    for (std::size_t i = 0; i < len; ++i) {
      u1[i] = rng.uniform();
      u2[i] = rng.uniform();
    }
    k.box_muller(u1.data(), u2.data(), re + off, im + off, len, scale);
  }
}

void fill_complex_gaussian(SplitMatrix& m, double variance, RngStream& rng) {
  for (std::size_t c = 0; c < m.cols(); ++c)
    fill_complex_gaussian(m.re(c), m.im(c), m.rows(), variance, rng);
}

ComplexVector sample_complex_gaussian(std::size_t n, double variance,
                                      RngStream& rng) {
  detail::require(n >= 1, "sample_complex_gaussian: n must be >= 1");
  detail::require(variance > 0.0,
                  "sample_complex_gaussian: variance must be > 0");
  std::vector<double> re(n);
  std::vector<double> im(n);
  fill_complex_gaussian(re.data(), im.data(), n, variance, rng);
  ComplexVector out(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    out(static_cast<Eigen::Index>(i)) = cplx(re[i], im[i]);
  return out;
}

ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols,
                             double variance, RngStream& rng) {
  detail::require(rows >= 1 && cols >= 1, "sample_ginibre: empty shape");
  SplitMatrix g(rows, cols);
  fill_complex_gaussian(g, variance, rng);
  return g.to_dense();
}

ComplexMatrix sample_haar_isometry(std::size_t rows, std::size_t cols,
                                   RngStream& rng) {
  detail::require(rows >= 1 && cols >= 1 && cols <= rows,
                  "sample_haar_isometry: need 1 <= cols <= rows");
  const ComplexMatrix g = sample_ginibre(rows, cols, 1.0, rng);
  const Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() *
                    ComplexMatrix::Identity(static_cast<Eigen::Index>(rows),
                                            static_cast<Eigen::Index>(cols));
  const auto& packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cplx r = packed(j, j);
    const double mag = std::abs(r);
    if (mag > 0.0) q.col(j) *= r / mag;
  }
  return q;
}

ComplexMatrix sample_haar_unitary(std::size_t n, RngStream& rng) {
  detail::require(n >= 1, "sample_haar_unitary: n must be >= 1");
  return sample_haar_isometry(n, n, rng);
}

bool orthonormalize_columns(SplitMatrix& g) {
  const std::size_t n = g.rows();
  const std::size_t k = g.cols();
  const auto& kern = simd::active();

  ComplexMatrix gram(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      double re = 0.0;
      double im = 0.0;
      kern.cdotc(n, g.re(i), g.im(i), g.re(j), g.im(j), &re, &im);
      const auto ii = static_cast<Eigen::Index>(i);
      const auto jj = static_cast<Eigen::Index>(j);
      gram(ii, jj) = cplx(re, im);
      gram(jj, ii) = cplx(re, -im);
    }
  }
  const Eigen::LLT<ComplexMatrix> llt(gram);
  if (llt.info() != Eigen::Success) return false;
  // gram = L L^H, so G = W T with T = L^H upper triangular, positive diagonal.
  const ComplexMatrix t = llt.matrixU();
  for (std::size_t j = 0; j < k; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    for (std::size_t i = 0; i < j; ++i) {
      const cplx c = -t(static_cast<Eigen::Index>(i), jj);
      kern.caxpy(n, c.real(), c.imag(), g.re(i), g.im(i), g.re(j), g.im(j));
    }
    const double inv = 1.0 / t(jj, jj).real();
    kern.cscal(n, inv, 0.0, g.re(j), g.im(j));
  }
  return true;
}

SplitMatrix sample_haar_isometry_split(std::size_t rows, std::size_t cols,
                                       RngStream& rng) {
  detail::require(rows >= 1 && cols >= 1 && cols <= rows,
                  "sample_haar_isometry_split: need 1 <= cols <= rows");
  SplitMatrix g(rows, cols);
  fill_complex_gaussian(g, 1.0, rng);
  // Composing two positive-diagonal Cholesky-QR passes still yields the
  // positive-diagonal QR of the original draw, hence a Haar Q.
  bool ok = orthonormalize_columns(g);
  if (ok && rows < 4 * cols) ok = orthonormalize_columns(g);
  if (!ok) {
    // Numerically rank-deficient draw; fall back to Householder on the same
    // matrix so that the stream position is unaffected.
    ComplexMatrix dense = g.to_dense();
    const Eigen::HouseholderQR<ComplexMatrix> qr(dense);
    ComplexMatrix q = qr.householderQ() *
                      ComplexMatrix::Identity(static_cast<Eigen::Index>(rows),
                                              static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
      const cplx r = qr.matrixQR()(j, j);
      if (std::abs(r) > 0.0) q.col(j) *= r / std::abs(r);
    }
    g = SplitMatrix::from_dense(q);
  }
  return g;
}

double sample_gamma(double shape, RngStream& rng) {
  detail::require(shape > 0.0, "sample_gamma: shape must be > 0");
  std::gamma_distribution<double> dist(shape, 1.0);
  return dist(rng);
}

std::size_t uniform_index(std::size_t n, RngStream& rng) {
  detail::require(n >= 1, "uniform_index: empty range");
  const std::uint64_t bound = n;
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return static_cast<std::size_t>(x % bound);
  }
}

std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    RngStream& rng) {
  detail::require(k <= n, "sample_without_replacement: k > n");
  // Floyd's algorithm.
  std::set<std::size_t> chosen;
  for (std::size_t j = n - k; j < n; ++j) {
    const std::size_t t = uniform_index(j + 1, rng);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace ota
