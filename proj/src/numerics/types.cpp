#include "ota/numerics/types.hpp"

namespace ota {

ComplexMatrix SplitMatrix::to_dense() const {
  ComplexMatrix m(static_cast<Eigen::Index>(rows_),
                  static_cast<Eigen::Index>(cols_));
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = at(r, c);
  return m;
}

SplitMatrix SplitMatrix::from_dense(const ComplexMatrix& m) {
  SplitMatrix out(static_cast<std::size_t>(m.rows()),
                  static_cast<std::size_t>(m.cols()));
  for (std::size_t c = 0; c < out.cols(); ++c) {
    for (std::size_t r = 0; r < out.rows(); ++r) {
      const cplx v =
          m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      out.re(c)[r] = v.real();
      out.im(c)[r] = v.imag();
    }
  }
  return out;
}

}  // namespace ota
