#include "ota/channel.hpp"

#include <cmath>
#include <limits>

#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"

namespace ota {

std::vector<std::size_t> ChannelRealization::active_users() const {
  std::vector<std::size_t> out;
  out.reserve(k_active);
  for (std::size_t k = 0; k < participation.size(); ++k)
    if (participation[k]) out.push_back(k);
  return out;
}

namespace {

// Inverse CDF of the radial law on the annulus [r0, R]: F(d) = (d^2 - r0^2) / (R^2 - r0^2).
double draw_distance(double radius, RngStream& rng) {
  const double r0 = std::min(kMinNodeDistance, radius);
  const double u = rng.uniform();
  return std::sqrt(r0 * r0 + u * (radius * radius - r0 * r0));
}

}  // namespace

Geometry place_nodes(std::size_t num_users, double radius, RngStream& rng) {
  detail::require(num_users >= 1, "place_nodes: need at least one user");
  detail::require(radius > 0.0 && std::isfinite(radius),
                  "place_nodes: radius must be positive");
  Geometry geom;
  geom.cell_radius = radius;
  geom.user_distances.resize(num_users);
  for (double& d : geom.user_distances) d = draw_distance(radius, rng);
  geom.attacker_distance = draw_distance(radius, rng);
  return geom;
}

std::vector<bool> apply_participation(std::span<const cplx> g,
                                      double threshold) {
  detail::require(threshold >= 0.0, "participation threshold must be >= 0");
  std::vector<bool> mask(g.size());
  bool any = false;
  for (std::size_t k = 0; k < g.size(); ++k) {
    mask[k] = std::abs(g[k]) > threshold;
    any = any || mask[k];
  }
  if (!any) throw InvalidBlockError("no user passes the participation gate");
  return mask;
}

ChannelRealization realize_channels(const Geometry& geom, RngStream& rng,
                                    double fading_threshold,
                                    double pathloss_exponent) {
  const std::size_t K = geom.user_distances.size();
  detail::require(K >= 1, "realize_channels: empty geometry");
  detail::require(pathloss_exponent > 0.0,
                  "realize_channels: path-loss exponent must be positive");
  for (double d : geom.user_distances)
    detail::require(d > 0.0, "realize_channels: distances must be positive");
  detail::require(geom.attacker_distance > 0.0,
                  "realize_channels: distances must be positive");

  const ComplexVector draws = sample_complex_gaussian(K + 1, 1.0, rng);
  ChannelRealization ch;
  ch.g.resize(K);
  ch.h.resize(K);
  const double half = -0.5 * pathloss_exponent;
  for (std::size_t k = 0; k < K; ++k) {
    ch.g[k] = draws(static_cast<Eigen::Index>(k));
    ch.h[k] = ch.g[k] * std::pow(geom.user_distances[k], half);
  }
  ch.h_b = draws(static_cast<Eigen::Index>(K)) *
           std::pow(geom.attacker_distance, half);
  ch.beta = std::pow(geom.attacker_distance, -pathloss_exponent);
  ch.participation = apply_participation(ch.g, fading_threshold);
  for (bool p : ch.participation) ch.k_active += p ? 1 : 0;
  return ch;
}

double amplitude_scaling_factor(const ChannelRealization& realization,
                                std::span<const double> peak_amplitudes,
                                double per_symbol) {
  const std::size_t K = realization.h.size();
  detail::require(peak_amplitudes.size() == K,
                  "amplitude_scaling_factor: one peak per user required");
  detail::require(realization.participation.size() == K,
                  "amplitude_scaling_factor: participation mask size");
  detail::require(realization.k_active >= 1,
                  "amplitude_scaling_factor: no participants");
  detail::require(per_symbol > 0.0,
                  "amplitude_scaling_factor: per-symbol power must be > 0");
  const double ka = static_cast<double>(realization.k_active);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < K; ++k) {
    if (!realization.participation[k]) continue;
    detail::require(peak_amplitudes[k] > 0.0,
                    "amplitude_scaling_factor: zero peak amplitude");
    best = std::min(best, ka * std::abs(realization.h[k]) / peak_amplitudes[k]);
  }
  return std::sqrt(per_symbol) * best;
}

}  // namespace ota
