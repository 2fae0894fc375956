#include "ota/detector.hpp"

#include <cmath>

#include "ota/errors.hpp"
#include "ota/numerics/erlang.hpp"
#include "ota/simd/kernels.hpp"

namespace ota {

std::string_view to_string(Hypothesis h) {
  return h == Hypothesis::kH0 ? "H0" : "H1";
}

double energy_statistic(const ComplexVector& y_d) {
  detail::require(y_d.size() >= 1, "energy_statistic: empty vector");
  return y_d.squaredNorm();
}

double energy_statistic(const double* re, const double* im, std::size_t n) {
  detail::require(n >= 1, "energy_statistic: empty vector");
  return simd::active().sum_abs2(re, im, n);
}

double calibrate_threshold(double sigma_tilde2, std::size_t D,
                           double target_pf) {
  detail::require(target_pf > 0.0 && target_pf < 1.0,
                  "calibrate_threshold: target_pf must lie in (0, 1)");
  return erlang_quantile(target_pf, D, sigma_tilde2);
}

Decision decide(double statistic, double threshold) {
  detail::require(threshold >= 0.0, "decide: threshold must be >= 0");
  return {statistic, threshold,
          statistic > threshold ? Hypothesis::kH1 : Hypothesis::kH0};
}

DetectorStats theoretical_moments(double sigma2, double eta, double beta,
                                  std::size_t D, double sigma_d2_over_k,
                                  double attack_power) {
  detail::require(sigma2 > 0.0, "theoretical_moments: sigma2 must be > 0");
  detail::require(eta > 0.0, "theoretical_moments: eta must be > 0");
  detail::require(beta >= 0.0, "theoretical_moments: beta must be >= 0");
  detail::require(D >= 1, "theoretical_moments: D must be >= 1");
  detail::require(sigma_d2_over_k >= 0.0,
                  "theoretical_moments: dummy term must be >= 0");
  detail::require(attack_power >= 0.0,
                  "theoretical_moments: attack power must be >= 0");
  const double d = static_cast<double>(D);
  const double s = sigma2 / (eta * eta) + sigma_d2_over_k;
  const double a = beta * attack_power / (eta * eta);

  DetectorStats st;
  st.sigma_tilde2 = s;
  st.beta = beta;
  st.eta = eta;
  st.D = D;
  st.mean_h0 = d * s;
  st.var_h0 = d * s * s;
  st.mean_h1 = d * (s + a);
  st.var_h1 = d * (s * s + 2.0 * s * a + 2.0 * a * a) + d * d * a * a;
  st.deflection = deflection_from_moments(st);
  return st;
}

double deflection_coefficient(double sigma2, double beta, std::size_t D) {
  detail::require(beta > 0.0, "deflection_coefficient: beta must be > 0");
  detail::require(D >= 1, "deflection_coefficient: D must be >= 1");
  detail::require(sigma2 >= 0.0, "deflection_coefficient: sigma2 must be >= 0");
  const double r = sigma2 / beta;
  return std::sqrt(1.0 / (1.0 + (r * r + 2.0 * r + 2.0) / static_cast<double>(D)));
}

double deflection_from_moments(const DetectorStats& stats) {
  detail::require(stats.var_h1 > 0.0, "deflection: var_h1 must be > 0");
  return (stats.mean_h1 - stats.mean_h0) / std::sqrt(stats.var_h1);
}

}  // namespace ota
