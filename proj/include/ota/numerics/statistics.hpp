#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace ota {

/// Sample mean/variance with standard errors.
///
/// `se_var` uses the fourth central moment: sqrt((m4 - var^2) / n).
struct MomentSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double se_mean = 0.0;
  double se_variance = 0.0;
};

MomentSummary summarize(std::span<const double> xs);

/// Kolmogorov distribution tail: P(sqrt(n) D_n > lambda) as n -> infinity.
double kolmogorov_tail(double lambda);

/// lambda with kolmogorov_tail(lambda) = alpha (1.6276 for alpha = 0.01).
double kolmogorov_critical(double alpha);

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double critical = 0.0;   // rejection threshold on `statistic`
  bool pass = false;       // statistic <= critical
};

KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf,
                       double alpha = 0.01);

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double alpha = 0.01);

/// Lag-1 sample autocorrelation.
double autocorrelation_lag1(std::span<const double> xs);

}  // namespace ota
