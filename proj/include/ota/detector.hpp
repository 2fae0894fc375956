#pragma once

#include <cstddef>
#include <string_view>

#include "ota/numerics/types.hpp"

namespace ota {

enum class Hypothesis { kH0, kH1 };

std::string_view to_string(Hypothesis h);

/// Closed-form moments of ||y_d||^2 under both hypotheses.
struct DetectorStats {
  double mean_h0 = 0.0;
  double var_h0 = 0.0;
  double mean_h1 = 0.0;
  double var_h1 = 0.0;
  double sigma_tilde2 = 0.0;
  double beta = 0.0;
  double eta = 0.0;
  std::size_t D = 0;
  double deflection = 0.0;
};

struct Decision {
  double statistic = 0.0;
  double threshold = 0.0;
  Hypothesis verdict = Hypothesis::kH0;
};

/// ||y_d||^2
double energy_statistic(const ComplexVector& y_d);
double energy_statistic(const double* re, const double* im, std::size_t n);

/// gamma with P(||y_d||^2 > gamma | H0) = target_pf under the Erlang(D, sigma_tilde2) law.
double calibrate_threshold(double sigma_tilde2, std::size_t D,
                           double target_pf);

/// H1 iff statistic > threshold; a tie resolves to H0.
Decision decide(double statistic, double threshold);

/// Moments for a Gaussian perturbation of per-symbol power `attack_power`
/// arriving through a Rayleigh channel with E|h_b|^2 = beta.
///
/// With s = sigma2/eta^2 + sigma_d2_over_k and a = beta*attack_power/eta^2:
///   mean_h0 = D s,        var_h0 = D s^2,
///   mean_h1 = D (s + a),  var_h1 = D (s^2 + 2 s a + 2 a^2) + D^2 a^2.
/// The D^2 term is the spread of the exponential |h_b|^2 shared by all
/// coordinates of the block.
DetectorStats theoretical_moments(double sigma2, double eta, double beta,
                                  std::size_t D, double sigma_d2_over_k,
                                  double attack_power = 1.0);

/// sqrt(1 / (1 + (sigma^4/beta^2 + 2 sigma^2/beta + 2) / D))
double deflection_coefficient(double sigma2, double beta, std::size_t D);

/// (mean_h1 - mean_h0) / sqrt(var_h1)
double deflection_from_moments(const DetectorStats& stats);

}  // namespace ota
