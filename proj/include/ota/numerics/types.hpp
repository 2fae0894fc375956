#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace ota {

using cplx = std::complex<double>;

/// Dense complex matrix (column-major). Houses the shared unitary and the
/// composite data blocks.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Column-major complex matrix stored as separate real and imaginary planes.
///
/// The split layout is what the SIMD kernels consume: every column is a pair
/// of contiguous double arrays of length `rows`, with column stride `ld`.
class SplitMatrix {
 public:
  SplitMatrix() = default;
  SplitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), ld_((rows + 3) & ~std::size_t{3}),
        re_(ld_ * cols, 0.0), im_(ld_ * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t ld() const { return ld_; }

  double* re(std::size_t col) { return re_.data() + col * ld_; }
  double* im(std::size_t col) { return im_.data() + col * ld_; }
  const double* re(std::size_t col) const { return re_.data() + col * ld_; }
  const double* im(std::size_t col) const { return im_.data() + col * ld_; }

  cplx at(std::size_t row, std::size_t col) const {
    return {re(col)[row], im(col)[row]};
  }

  ComplexMatrix to_dense() const;
  static SplitMatrix from_dense(const ComplexMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t ld_ = 0;
  std::vector<double> re_;
  std::vector<double> im_;
};

}  // namespace ota
