#include "ota/attacker.hpp"

#include <cmath>
#include <string>

#include "ota/errors.hpp"
#include "ota/numerics/sampling.hpp"

namespace ota {

std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::kNone: return "none";
    case AttackKind::kGaussianUniform: return "gaussian";
    case AttackKind::kIdleDuringDetection: return "idle";
    case AttackKind::kScaledPower: return "scaled";
  }
  return "unknown";
}

AttackKind parse_attack(std::string_view text) {
  if (text == "none") return AttackKind::kNone;
  if (text == "gaussian") return AttackKind::kGaussianUniform;
  if (text == "idle") return AttackKind::kIdleDuringDetection;
  if (text == "scaled") return AttackKind::kScaledPower;
  throw ConfigError("unknown attack '" + std::string(text) + "'");
}

void AttackStrategy::validate() const {
  if (!(power_scale >= 0.0) || !std::isfinite(power_scale))
    throw ConfigError("attack power_scale must be finite and >= 0");
  if (kind == AttackKind::kScaledPower && !(power_scale < 1.0))
    throw ConfigError("scaled attack requires power_scale < 1");
}

double attack_symbol_power(const AttackStrategy& strategy,
                           double per_symbol_power) {
  if (strategy.kind == AttackKind::kNone) return 0.0;
  return per_symbol_power * strategy.power_scale;
}

ComplexVector generate_attack(
    const AttackStrategy& strategy, std::size_t length,
    double per_symbol_power,
    std::optional<std::span<const std::size_t>> oracle_dummy_indices,
    RngStream& rng) {
  detail::require(length >= 1, "generate_attack: length must be >= 1");
  detail::require(per_symbol_power >= 0.0,
                  "generate_attack: per-symbol power must be >= 0");
  strategy.validate();
  if (strategy.kind == AttackKind::kIdleDuringDetection &&
      !oracle_dummy_indices)
    throw ConfigError("idle attack needs the dummy-index oracle");

  const double power = attack_symbol_power(strategy, per_symbol_power);
  if (power == 0.0) return ComplexVector::Zero(static_cast<Eigen::Index>(length));
  ComplexVector b = sample_complex_gaussian(length, power, rng);
  if (strategy.kind == AttackKind::kIdleDuringDetection) {
    for (std::size_t i : *oracle_dummy_indices) {
      detail::require(i < length, "generate_attack: oracle index out of range");
      b(static_cast<Eigen::Index>(i)) = 0.0;
    }
  }
  return b;
}

}  // namespace ota
