#include "ota/ota_core.hpp"

#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"

namespace ota {

ComplexVector precode(const ComplexVector& x, cplx h, double eta,
                      std::size_t k_active) {
  detail::require(h != cplx(0.0, 0.0), "precode: zero channel coefficient");
  detail::require(eta > 0.0, "precode: eta must be > 0");
  detail::require(k_active >= 1, "precode: k_active must be >= 1");
  const cplx gain = eta / (static_cast<double>(k_active) * h);
  return x * gain;
}

ComplexMatrix precode_block(const ComplexMatrix& transmit,
                            const ChannelRealization& realization,
                            double eta) {
  const auto users = realization.active_users();
  detail::require(static_cast<std::size_t>(transmit.cols()) == users.size(),
                  "precode_block: one column per participant required");
  ComplexMatrix out(transmit.rows(), transmit.cols());
  for (std::size_t k = 0; k < users.size(); ++k) {
    const auto c = static_cast<Eigen::Index>(k);
    out.col(c) = precode(transmit.col(c), realization.h[users[k]], eta,
                         users.size());
  }
  return out;
}

ComplexVector superpose(const TransmitBlock& block,
                        const ChannelRealization& realization,
                        double noise_variance, RngStream& rng) {
  detail::require(noise_variance > 0.0, "superpose: noise variance must be > 0");
  const auto users = realization.active_users();
  const Eigen::Index n = block.attacker_signal.size();
  detail::require(n >= 1, "superpose: empty block");
  detail::require(static_cast<std::size_t>(block.signals.cols()) == users.size(),
                  "superpose: one signal column per participant required");
  detail::require(block.signals.rows() == n,
                  "superpose: signal and attack lengths differ");

  ComplexVector y = sample_complex_gaussian(static_cast<std::size_t>(n),
                                            noise_variance, rng);
  for (std::size_t k = 0; k < users.size(); ++k)
    y += realization.h[users[k]] * block.signals.col(static_cast<Eigen::Index>(k));
  y += realization.h_b * block.attacker_signal;
  return y;
}

ComplexVector postprocess(const ComplexVector& y_raw, double eta) {
  detail::require(eta > 0.0, "postprocess: eta must be > 0");
  return y_raw / eta;
}

}  // namespace ota
