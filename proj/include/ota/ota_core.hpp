#pragma once

#include <cstddef>

#include "ota/channel.hpp"
#include "ota/numerics/rng.hpp"
#include "ota/numerics/types.hpp"

namespace ota {

/// Precoded symbols of the participating users and the attacker's vector.
struct TransmitBlock {
  ComplexMatrix signals;         // (L+D) x K_active, column k = k-th participant
  ComplexVector attacker_signal; // length L+D
};

struct ReceivedBlock {
  ComplexVector y_raw;  // superposed signal plus noise
  ComplexVector y;      // y_raw / eta
  double eta = 0.0;
};

/// Channel-inverting pre-processing: x * eta / (K_active * h).
ComplexVector precode(const ComplexVector& x, cplx h, double eta,
                      std::size_t k_active);

/// Precodes every participant's transmit column. `transmit` holds one column
/// per participant, ordered like realization.active_users().
ComplexMatrix precode_block(const ComplexMatrix& transmit,
                            const ChannelRealization& realization, double eta);

/// y_raw[i] = sum_k h_k s[i,k] + h_b b[i] + z[i], z ~ CN(0, noise_variance I).
ComplexVector superpose(const TransmitBlock& block,
                        const ChannelRealization& realization,
                        double noise_variance, RngStream& rng);

/// y = y_raw / eta
ComplexVector postprocess(const ComplexVector& y_raw, double eta);

}  // namespace ota
