#include "ota/dummy_schemes.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"

namespace ota {

std::string_view to_string(SchemeKind s) {
  return s == SchemeKind::kCorrelated ? "correlated" : "uncorrelated";
}

SchemeKind parse_scheme(std::string_view text) {
  if (text == "correlated") return SchemeKind::kCorrelated;
  if (text == "uncorrelated") return SchemeKind::kUncorrelated;
  throw ConfigError("unknown scheme '" + std::string(text) + "'");
}

std::vector<std::size_t> draw_dummy_indices(std::size_t L, std::size_t D,
                                            RngStream& shared_rng) {
  detail::require(L >= 1, "draw_dummy_indices: L must be >= 1");
  detail::require(D >= 1, "draw_dummy_indices: D must be >= 1");
  return sample_without_replacement(L + D, D, shared_rng);
}

namespace {

std::vector<std::size_t> complement(const std::vector<std::size_t>& idx,
                                    std::size_t n) {
  std::vector<std::size_t> out;
  out.reserve(n - idx.size());
  std::size_t j = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (j < idx.size() && idx[j] == i) {
      ++j;
      continue;
    }
    out.push_back(i);
  }
  return out;
}

// Scatters the real data rows into the non-dummy positions; dummy rows zero.
ComplexMatrix interleave(const ComplexMatrix& real_data,
                         const std::vector<std::size_t>& data_indices,
                         std::size_t n) {
  ComplexMatrix x = ComplexMatrix::Zero(static_cast<Eigen::Index>(n),
                                        real_data.cols());
  for (std::size_t r = 0; r < data_indices.size(); ++r)
    x.row(static_cast<Eigen::Index>(data_indices[r])) =
        real_data.row(static_cast<Eigen::Index>(r));
  return x;
}

}  // namespace

CompositeBlock build_uncorrelated(const ComplexMatrix& real_data, std::size_t D,
                                  double sigma_d2, RngStream& shared_rng,
                                  RngStream& data_rng) {
  detail::require(real_data.rows() >= 1 && real_data.cols() >= 1,
                  "build_uncorrelated: empty data");
  detail::require(sigma_d2 > 0.0, "build_uncorrelated: sigma_d2 must be > 0");
  CompositeBlock b;
  b.scheme = SchemeKind::kUncorrelated;
  b.L = static_cast<std::size_t>(real_data.rows());
  b.D = D;
  b.sigma_d2 = sigma_d2;
  b.power_fraction = static_cast<double>(b.L) / static_cast<double>(b.L + D);
  if (D > 0) b.dummy_indices = draw_dummy_indices(b.L, D, shared_rng);
  b.data_indices = complement(b.dummy_indices, b.L + D);
  b.data = interleave(real_data, b.data_indices, b.L + D);
  for (Eigen::Index k = 0; k < b.data.cols() && D > 0; ++k) {
    const ComplexVector d = sample_complex_gaussian(D, sigma_d2, data_rng);
    for (std::size_t j = 0; j < D; ++j)
      b.data(static_cast<Eigen::Index>(b.dummy_indices[j]), k) =
          d(static_cast<Eigen::Index>(j));
  }
  b.transmit = b.data;
  return b;
}

CompositeBlock build_correlated(const ComplexMatrix& real_data, std::size_t D,
                                RngStream& shared_rng) {
  detail::require(real_data.rows() >= 1 && real_data.cols() >= 1,
                  "build_correlated: empty data");
  detail::require(D >= 1, "build_correlated: D must be >= 1");
  CompositeBlock b;
  b.scheme = SchemeKind::kCorrelated;
  b.L = static_cast<std::size_t>(real_data.rows());
  b.D = D;
  b.sigma_d2 = 0.0;
  b.power_fraction = 1.0;
  b.dummy_indices = draw_dummy_indices(b.L, D, shared_rng);
  b.data_indices = complement(b.dummy_indices, b.L + D);
  b.data = interleave(real_data, b.data_indices, b.L + D);
  b.unitary = sample_haar_unitary(b.L + D, shared_rng);
  b.transmit = (*b.unitary) * b.data;
  return b;
}

std::vector<double> peak_amplitudes(const CompositeBlock& block) {
  std::vector<double> peaks(static_cast<std::size_t>(block.transmit.cols()));
  for (Eigen::Index k = 0; k < block.transmit.cols(); ++k)
    peaks[static_cast<std::size_t>(k)] =
        std::sqrt(block.transmit.col(k).cwiseAbs2().maxCoeff());
  return peaks;
}

DetectionVector extract_detection_vector(const ReceivedBlock& received,
                                         const CompositeBlock& block,
                                         std::size_t k_active, double eta,
                                         double noise_variance) {
  const std::size_t n = block.length();
  if (static_cast<std::size_t>(received.y_raw.size()) != n ||
      static_cast<std::size_t>(received.y.size()) != n)
    throw ParameterError("extract_detection_vector: block length mismatch");
  detail::require(block.dummy_indices.size() == block.D,
                  "extract_detection_vector: dummy index count mismatch");
  detail::require(k_active >= 1, "extract_detection_vector: k_active >= 1");
  detail::require(eta > 0.0 && noise_variance > 0.0,
                  "extract_detection_vector: eta and noise must be > 0");
  if (block.scheme == SchemeKind::kCorrelated)
    detail::require(block.unitary.has_value() &&
                        static_cast<std::size_t>(block.unitary->rows()) == n,
                    "extract_detection_vector: missing or mismatched unitary");

  const ComplexVector y = block.scheme == SchemeKind::kCorrelated
                              ? ComplexVector(block.unitary->adjoint() * received.y_raw / eta)
                              : ComplexVector(received.y);

  DetectionVector out;
  out.y_d.resize(static_cast<Eigen::Index>(block.D));
  for (std::size_t j = 0; j < block.D; ++j)
    out.y_d(static_cast<Eigen::Index>(j)) =
        y(static_cast<Eigen::Index>(block.dummy_indices[j]));
  out.communication.resize(static_cast<Eigen::Index>(block.data_indices.size()));
  for (std::size_t j = 0; j < block.data_indices.size(); ++j)
    out.communication(static_cast<Eigen::Index>(j)) =
        y(static_cast<Eigen::Index>(block.data_indices[j]));
  out.effective_noise_variance =
      noise_variance / (eta * eta) +
      block.sigma_d2 / static_cast<double>(k_active);
  return out;
}

}  // namespace ota
