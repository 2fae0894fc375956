#pragma once

#include <cstddef>
#include <vector>

#include "ota/numerics/rng.hpp"
#include "ota/numerics/types.hpp"

namespace ota {

/// n i.i.d. circularly-symmetric CN(0, variance) entries.
ComplexVector sample_complex_gaussian(std::size_t n, double variance,
                                      RngStream& rng);

/// Bulk CN(0, variance) fill of split planes. Consumes two uniforms per entry
/// in a fixed order, so the draws do not depend on the active kernel set.
void fill_complex_gaussian(double* re, double* im, std::size_t n,
                           double variance, RngStream& rng);

/// Fills every column of `m` (column by column).
void fill_complex_gaussian(SplitMatrix& m, double variance, RngStream& rng);

/// rows x cols matrix of i.i.d. CN(0, variance) entries.
ComplexMatrix sample_ginibre(std::size_t rows, std::size_t cols,
                             double variance, RngStream& rng);

/// Haar-distributed n x n unitary.
///
/// QR of a square complex Ginibre matrix followed by the phase correction
/// Q <- Q diag(R_jj / |R_jj|), which makes the R factor positive on the
/// diagonal and the Q factor exactly Haar.
ComplexMatrix sample_haar_unitary(std::size_t n, RngStream& rng);

/// First `cols` columns of a Haar unitary of order `rows` (same construction
/// on a rows x cols Ginibre matrix).
ComplexMatrix sample_haar_isometry(std::size_t rows, std::size_t cols,
                                   RngStream& rng);

/// Haar isometry in split layout, built with Cholesky-QR on the SIMD kernels.
/// A second orthogonalisation pass is applied when rows < 4 * cols.
SplitMatrix sample_haar_isometry_split(std::size_t rows, std::size_t cols,
                                       RngStream& rng);

/// Orthonormalises the columns of `g` in place (Cholesky-QR with positive
/// diagonal R). Returns false if the Gram matrix is not positive definite.
bool orthonormalize_columns(SplitMatrix& g);

/// Gamma(shape, 1) variate.
double sample_gamma(double shape, RngStream& rng);

/// Unbiased integer in [0, n).
std::size_t uniform_index(std::size_t n, RngStream& rng);

/// k distinct values from [0, n), uniform over k-subsets, returned sorted.
std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                    std::size_t k,
                                                    RngStream& rng);

}  // namespace ota
