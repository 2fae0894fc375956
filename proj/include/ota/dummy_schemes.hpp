#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ota/numerics/rng.hpp"
#include "ota/numerics/types.hpp"
#include "ota/ota_core.hpp"

namespace ota {

enum class SchemeKind { kUncorrelated, kCorrelated };

std::string_view to_string(SchemeKind s);
SchemeKind parse_scheme(std::string_view text);

/// Transmit-side data of one block under a dummy-sample design.
struct CompositeBlock {
  SchemeKind scheme = SchemeKind::kUncorrelated;
  std::size_t L = 0;
  std::size_t D = 0;
  /// Composite data X, (L+D) x K: real symbols at data positions, dummies
  /// (uncorrelated) or zeros (correlated) at dummy positions.
  ComplexMatrix data;
  /// What the users put on the air before precoding: X, or U X.
  ComplexMatrix transmit;
  std::vector<std::size_t> dummy_indices;  // sorted, 0-based
  std::vector<std::size_t> data_indices;   // complement, sorted
  std::optional<ComplexMatrix> unitary;    // present iff correlated
  double sigma_d2 = 0.0;                   // dummy variance, 0 iff correlated
  /// Per-symbol budget relative to a dummy-free block: L/(L+D) when the
  /// dummies take energy, 1 otherwise.
  double power_fraction = 1.0;

  std::size_t length() const { return L + D; }
};

/// Detection-phase observation and its H0 per-coordinate variance.
struct DetectionVector {
  ComplexVector y_d;
  double effective_noise_variance = 0.0;
  /// Estimate of the mean data vector (non-dummy coordinates).
  ComplexVector communication;
};

/// D distinct positions in [0, L+D), drawn from the shared-secret stream.
std::vector<std::size_t> draw_dummy_indices(std::size_t L, std::size_t D,
                                            RngStream& shared_rng);

/// Interleaves independent CN(0, sigma_d2) dummies into each user's column at
/// the shared positions. D = 0 passes the data through.
CompositeBlock build_uncorrelated(const ComplexMatrix& real_data, std::size_t D,
                                  double sigma_d2, RngStream& shared_rng,
                                  RngStream& data_rng);

/// Zero dummies, then rotation of every column by the shared Haar unitary.
CompositeBlock build_correlated(const ComplexMatrix& real_data, std::size_t D,
                                RngStream& shared_rng);

/// Per-user peak amplitude max_i |transmit[i, k]|.
std::vector<double> peak_amplitudes(const CompositeBlock& block);

/// Server side: undo the rotation (correlated) and split the post-processed
/// vector into its detection and communication coordinates.
DetectionVector extract_detection_vector(const ReceivedBlock& received,
                                         const CompositeBlock& block,
                                         std::size_t k_active, double eta,
                                         double noise_variance);

}  // namespace ota
