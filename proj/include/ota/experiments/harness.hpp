#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "ota/experiments/config.hpp"
#include "ota/experiments/trial.hpp"

namespace ota::experiments {

/// Every harness entry point optionally appends the records it simulated to
/// `trials_out`.

struct RocPoint {
  double pf = 0.0;
  double pd = 0.0;
  double threshold = 0.0;  // on ||y_d||^2 / sigma_tilde^2
};

struct RocCurve {
  std::vector<RocPoint> points;  // pf nondecreasing, (0,0) first, (1,1) last
  double auc = 0.0;
};

/// Empirical ROC of "declare H1 iff x > t" over every threshold.
RocCurve roc_from_samples(std::span<const double> h0, std::span<const double> h1);

/// trials/2 blocks per hypothesis; the swept statistic is ||y_d||^2 scaled
/// by each block's sigma_tilde^2, the quantity the calibrated detector
/// compares against a fixed Erlang quantile.
RocCurve roc_curve(const SystemConfig& config,
                   std::vector<TrialRecord>* trials_out = nullptr);

struct TradeoffPoint {
  double delta = 0.0;
  std::size_t D = 0;
  double overhead_fraction = 0.0;  // D / L
  double target_pf = 0.0;
  double pd = 0.0;
  double pd_stderr = 0.0;
};

/// P_D at config.target_pf for each delta, over config.trials H1 blocks.
std::vector<TradeoffPoint> tradeoff_curve(
    const SystemConfig& config, std::span<const double> deltas,
    std::vector<TrialRecord>* trials_out = nullptr);

struct Histogram {
  SchemeKind scheme = SchemeKind::kCorrelated;
  double delta = 0.0;
  /// Bin edges in log10(||y_d||^2); equal width.
  std::vector<double> edges;
  std::vector<std::size_t> h0;
  std::vector<std::size_t> h1;
  double overlap = 0.0;  // sum_i min(p0_i, p1_i)
  double h0_mean = 0.0;  // of the raw statistic
  double h0_mean_stderr = 0.0;
  double h0_mean_theory = 0.0;  // average of D sigma_tilde^2
};

/// Energies of trials/2 blocks per hypothesis for config.scheme, binned on a
/// common log scale spanning both samples.
Histogram histogram_export(const SystemConfig& config,
                           std::vector<TrialRecord>* trials_out = nullptr);

/// Overlap coefficient of two binned samples over the same edges.
double overlap_coefficient(std::span<const std::size_t> a,
                           std::span<const std::size_t> b);

struct MomentCheck {
  std::string moment;  // mean_h0, var_h0, mean_h1, var_h1
  double theory = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  bool pass = false;
};

struct MomentReport {
  SchemeKind scheme = SchemeKind::kCorrelated;
  std::vector<MomentCheck> checks;
  bool all_pass() const;
};

/// Compares Monte Carlo moments of ||y_d||^2 with the closed form at 3 SE.
/// The node placement and the users' fading are held at one draw of the
/// seed so that beta is a fixed parameter; the attacker's fading, data,
/// perturbation and noise are redrawn for each block. The closed form is
/// averaged over the per-block eta (mixture mean and variance).
MomentReport validate_moments(const SystemConfig& config,
                              std::vector<TrialRecord>* trials_out = nullptr);

}  // namespace ota::experiments
