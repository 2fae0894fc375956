#include "ota/numerics/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "ota/errors.hpp"

namespace ota {

MomentSummary summarize(std::span<const double> xs) {
  MomentSummary s;
  s.n = xs.size();
  if (s.n == 0) return s;
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(s.n);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    const double d2 = d * d;
    m2 += d2;
    m4 += d2 * d2;
  }
  const double n = static_cast<double>(s.n);
  s.mean = mean;
  s.variance = s.n > 1 ? m2 / (n - 1.0) : 0.0;
  s.se_mean = std::sqrt(s.variance / n);
  const double pop_var = m2 / n;
  s.se_variance = std::sqrt(std::max(0.0, m4 / n - pop_var * pop_var) / n);
  return s;
}

double kolmogorov_tail(double lambda) {
  if (lambda <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double kolmogorov_critical(double alpha) {
  detail::require(alpha > 0.0 && alpha < 1.0,
                  "kolmogorov_critical: alpha must lie in (0, 1)");
  double lo = 0.2;
  double hi = 5.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (kolmogorov_tail(mid) > alpha)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

KsResult ks_one_sample(std::span<const double> sample,
                       const std::function<double(double)>& cdf,
                       double alpha) {
  detail::require(!sample.empty(), "ks_one_sample: empty sample");
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::max(static_cast<double>(i + 1) / n - f,
                             f - static_cast<double>(i) / n));
  }
  KsResult r;
  r.statistic = d;
  r.critical = kolmogorov_critical(alpha) / std::sqrt(n);
  r.pass = d <= r.critical;
  return r;
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b,
                       double alpha) {
  detail::require(!a.empty() && !b.empty(), "ks_two_sample: empty sample");
  std::vector<double> xa(a.begin(), a.end());
  std::vector<double> xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.critical = kolmogorov_critical(alpha) * std::sqrt((na + nb) / (na * nb));
  r.pass = d <= r.critical;
  return r;
}

double autocorrelation_lag1(std::span<const double> xs) {
  detail::require(xs.size() >= 3, "autocorrelation_lag1: need >= 3 samples");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double d = xs[i] - mean;
    den += d * d;
    if (i + 1 < xs.size()) num += d * (xs[i + 1] - mean);
  }
  return den > 0.0 ? num / den : 0.0;
}

}  // namespace ota
