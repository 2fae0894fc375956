#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ota/detector.hpp"
#include "ota/experiments/config.hpp"

namespace ota::experiments {

struct TrialRecord {
  std::uint64_t block_index = 0;
  Hypothesis hypothesis = Hypothesis::kH0;
  double statistic = 0.0;     // ||y_d||^2
  double eta = 0.0;
  double beta = 0.0;
  std::size_t k_active = 0;
  double sigma_tilde2 = 0.0;  // H0 per-coordinate variance of y_d
  double attack_power = 0.0;  // per-symbol power of the perturbation
  std::size_t redraws = 0;    // blocks discarded for lack of participants

  double normalized() const { return statistic / sigma_tilde2; }
};

/// One block under `hypothesis`. Deterministic in (config, hypothesis,
/// block_index); H0 transmits no perturbation.
TrialRecord run_trial(const SystemConfig& config, Hypothesis hypothesis,
                      std::uint64_t block_index);

/// Blocks first_block .. first_block + count - 1, in order. Work is spread
/// over config.threads workers; the result does not depend on the count.
std::vector<TrialRecord> run_trials(const SystemConfig& config,
                                    Hypothesis hypothesis, std::size_t count,
                                    std::uint64_t first_block = 0);

}  // namespace ota::experiments
