#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

#include "ota/numerics/rng.hpp"
#include "ota/numerics/types.hpp"

namespace ota {

enum class AttackKind { kNone, kGaussianUniform, kIdleDuringDetection, kScaledPower };

std::string_view to_string(AttackKind k);
AttackKind parse_attack(std::string_view text);

struct AttackStrategy {
  AttackKind kind = AttackKind::kGaussianUniform;
  double power_scale = 1.0;  // applied to the attacker's per-symbol budget

  void validate() const;
  /// True when the perturbation is i.i.d. across all block positions.
  bool isotropic() const { return kind != AttackKind::kIdleDuringDetection; }
};

/// Expected |b[i]|^2 at positions where the attacker transmits.
double attack_symbol_power(const AttackStrategy& strategy,
                           double per_symbol_power);

/// Perturbation vector b of the given length. The dummy positions are an
/// evaluation-only oracle needed by the idle strategy; no other strategy reads
/// them.
ComplexVector generate_attack(
    const AttackStrategy& strategy, std::size_t length,
    double per_symbol_power,
    std::optional<std::span<const std::size_t>> oracle_dummy_indices,
    RngStream& rng);

}  // namespace ota
