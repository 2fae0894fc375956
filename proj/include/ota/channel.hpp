#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ota/numerics/rng.hpp"
#include "ota/numerics/types.hpp"

namespace ota {

/// Nodes closer than this to the server are excluded; d^-4 path loss
/// diverges at the origin.
inline constexpr double kMinNodeDistance = 1.0;

struct Geometry {
  std::vector<double> user_distances;  // meters
  double attacker_distance = 0.0;      // meters
  double cell_radius = 0.0;            // meters
};

/// One block's channel state. Channels are static within a block.
struct ChannelRealization {
  std::vector<cplx> g;          // small-scale fading of each user
  std::vector<cplx> h;          // h_k = g_k * d_k^(-exponent/2)
  cplx h_b{};                   // attacker coefficient
  std::vector<bool> participation;
  std::size_t k_active = 0;
  double beta = 0.0;            // E|h_b|^2 = d_b^-exponent

  /// Indices of participating users, ascending.
  std::vector<std::size_t> active_users() const;
};

struct PowerBudget {
  double p0 = 0.0;              // per-user budget, watts
  double per_symbol = 0.0;      // P_s after dummy overhead, watts
  double noise_variance = 0.0;  // sigma^2, watts
};

/// Uniform placement over the disk of `radius` around the server, with the
/// 1 m exclusion zone removed (distance density proportional to d).
Geometry place_nodes(std::size_t num_users, double radius, RngStream& rng);

/// Draws CN(0, 1) small-scale fading for every user and the attacker and
/// applies d^-exponent power path loss. Throws InvalidBlockError when no user
/// clears the participation gate.
ChannelRealization realize_channels(const Geometry& geom, RngStream& rng,
                                    double fading_threshold = 0.2,
                                    double pathloss_exponent = 4.0);

/// mask_k = |g_k| > threshold (strict). Throws InvalidBlockError if empty.
std::vector<bool> apply_participation(std::span<const cplx> g,
                                      double threshold);

/// eta = sqrt(per_symbol) * min_k K_active |h_k| / peak_k over participants.
/// `peak_amplitudes` is indexed like realization.h; entries of
/// non-participants are ignored.
double amplitude_scaling_factor(const ChannelRealization& realization,
                                std::span<const double> peak_amplitudes,
                                double per_symbol);

}  // namespace ota
