#include "ota/experiments/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ota/errors.hpp"
#include "ota/numerics/statistics.hpp"

namespace ota::experiments {
namespace {

std::vector<double> normalized(const std::vector<TrialRecord>& recs) {
  std::vector<double> out(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) out[i] = recs[i].normalized();
  return out;
}

std::vector<double> raw(const std::vector<TrialRecord>& recs) {
  std::vector<double> out(recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) out[i] = recs[i].statistic;
  return out;
}

void keep(std::vector<TrialRecord>* sink, const std::vector<TrialRecord>& recs) {
  if (sink) sink->insert(sink->end(), recs.begin(), recs.end());
}

}  // namespace

RocCurve roc_from_samples(std::span<const double> h0,
                          std::span<const double> h1) {
  detail::require(!h0.empty() && !h1.empty(), "roc: empty sample");
  struct Tagged {
    double x;
    bool alt;
  };
  std::vector<Tagged> pooled;
  pooled.reserve(h0.size() + h1.size());
  for (double x : h0) pooled.push_back({x, false});
  for (double x : h1) pooled.push_back({x, true});
  std::sort(pooled.begin(), pooled.end(),
            [](const Tagged& a, const Tagged& b) { return a.x > b.x; });

  const double n0 = static_cast<double>(h0.size());
  const double n1 = static_cast<double>(h1.size());
  RocCurve curve;
  curve.points.push_back({0.0, 0.0, pooled.front().x});
  std::size_t c0 = 0, c1 = 0;
  for (std::size_t i = 0; i < pooled.size();) {
    const double v = pooled[i].x;
    while (i < pooled.size() && pooled[i].x == v) {
      (pooled[i].alt ? c1 : c0)++;
      ++i;
    }
    const double next = i < pooled.size()
                            ? pooled[i].x
                            : std::nextafter(v, -std::numeric_limits<double>::infinity());
    const RocPoint p{static_cast<double>(c0) / n0, static_cast<double>(c1) / n1, next};
    const RocPoint& prev = curve.points.back();
    curve.auc += (p.pf - prev.pf) * 0.5 * (p.pd + prev.pd);
    curve.points.push_back(p);
  }
  return curve;
}

RocCurve roc_curve(const SystemConfig& config,
                   std::vector<TrialRecord>* trials_out) {
  config.validate();
  detail::require(config.trials >= 2, "roc_curve: need at least two trials");
  const std::size_t n = config.trials / 2;
  const auto r0 = run_trials(config, Hypothesis::kH0, n);
  const auto r1 = run_trials(config, Hypothesis::kH1, n);
  keep(trials_out, r0);
  keep(trials_out, r1);
  return roc_from_samples(normalized(r0), normalized(r1));
}

std::vector<TradeoffPoint> tradeoff_curve(
    const SystemConfig& config, std::span<const double> deltas,
    std::vector<TrialRecord>* trials_out) {
  std::vector<TradeoffPoint> out;
  for (double delta : deltas) {
    SystemConfig c = config;
    c.delta = delta;
    c.validate();
    const std::size_t D = c.D();
    const auto h1 = run_trials(c, Hypothesis::kH1, c.trials);
    keep(trials_out, h1);

    double unit_threshold = 0.0;
    if (c.calibration == Calibration::kAnalytic) {
      unit_threshold = calibrate_threshold(1.0, D, c.target_pf);
    } else {
      const auto r0 = run_trials(c, Hypothesis::kH0, c.trials);
      keep(trials_out, r0);
      auto h0 = normalized(r0);
      std::sort(h0.begin(), h0.end());
      const auto exceed = static_cast<std::size_t>(
          std::floor(c.target_pf * static_cast<double>(h0.size())));
      unit_threshold = h0[h0.size() - std::min(exceed + 1, h0.size())];
    }

    std::size_t hits = 0;
    for (const auto& r : h1)
      if (decide(r.statistic, r.sigma_tilde2 * unit_threshold).verdict ==
          Hypothesis::kH1)
        ++hits;
    TradeoffPoint p;
    p.delta = delta;
    p.D = D;
    p.overhead_fraction = static_cast<double>(D) / static_cast<double>(c.L);
    p.target_pf = c.target_pf;
    p.pd = static_cast<double>(hits) / static_cast<double>(h1.size());
    p.pd_stderr = std::sqrt(p.pd * (1.0 - p.pd) / static_cast<double>(h1.size()));
    out.push_back(p);
  }
  return out;
}

double overlap_coefficient(std::span<const std::size_t> a,
                           std::span<const std::size_t> b) {
  detail::require(a.size() == b.size(), "overlap: bin count mismatch");
  double na = 0.0, nb = 0.0;
  for (std::size_t v : a) na += static_cast<double>(v);
  for (std::size_t v : b) nb += static_cast<double>(v);
  detail::require(na > 0.0 && nb > 0.0, "overlap: empty histogram");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += std::min(static_cast<double>(a[i]) / na, static_cast<double>(b[i]) / nb);
  return s;
}

Histogram histogram_export(const SystemConfig& config,
                           std::vector<TrialRecord>* trials_out) {
  config.validate();
  detail::require(config.trials >= 2, "histogram_export: need trials >= 2");
  const std::size_t n = config.trials / 2;
  const auto r0 = run_trials(config, Hypothesis::kH0, n);
  const auto r1 = run_trials(config, Hypothesis::kH1, n);
  keep(trials_out, r0);
  keep(trials_out, r1);
  const auto x0 = raw(r0);
  const auto x1 = raw(r1);

  Histogram h;
  h.scheme = config.scheme;
  h.delta = config.delta;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto* xs : {&x0, &x1})
    for (double x : *xs) {
      lo = std::min(lo, std::log10(x));
      hi = std::max(hi, std::log10(x));
    }
  if (!(hi > lo)) hi = lo + 1.0;
  const std::size_t bins = config.hist_bins;
  const double width = (hi - lo) / static_cast<double>(bins);
  h.edges.resize(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i)
    h.edges[i] = lo + width * static_cast<double>(i);
  h.edges[bins] = hi;

  auto fill = [&](const std::vector<double>& xs, std::vector<std::size_t>& counts) {
    counts.assign(bins, 0);
    for (double x : xs) {
      const double pos = (std::log10(x) - lo) / width;
      const auto idx = std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, pos)));
      ++counts[idx];
    }
  };
  fill(x0, h.h0);
  fill(x1, h.h1);
  h.overlap = overlap_coefficient(h.h0, h.h1);

  const MomentSummary s0 = summarize(x0);
  h.h0_mean = s0.mean;
  h.h0_mean_stderr = s0.se_mean;
  double theory = 0.0;
  for (const auto& r : r0)
    theory += static_cast<double>(config.D()) * r.sigma_tilde2;
  h.h0_mean_theory = theory / static_cast<double>(r0.size());
  return h;
}

bool MomentReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const MomentCheck& m) { return m.pass; });
}

MomentReport validate_moments(const SystemConfig& config,
                              std::vector<TrialRecord>* trials_out) {
  SystemConfig c = config;
  c.geometry = GeometryMode::kFixed;
  c.validate();
  const double sigma2 = c.noise_variance();
  const std::size_t D = c.D();

  MomentReport report;
  report.scheme = c.scheme;
  for (Hypothesis hyp : {Hypothesis::kH0, Hypothesis::kH1}) {
    const auto recs = run_trials(c, hyp, c.trials);
    keep(trials_out, recs);
    double m_sum = 0.0, second_sum = 0.0;
    for (const auto& r : recs) {
      const double dummy_term = r.sigma_tilde2 - sigma2 / (r.eta * r.eta);
      const DetectorStats st = theoretical_moments(
          sigma2, r.eta, r.beta, D, std::max(0.0, dummy_term), r.attack_power);
      const double m = hyp == Hypothesis::kH0 ? st.mean_h0 : st.mean_h1;
      const double v = hyp == Hypothesis::kH0 ? st.var_h0 : st.var_h1;
      m_sum += m;
      second_sum += v + m * m;
    }
    const double n = static_cast<double>(recs.size());
    const double mean_theory = m_sum / n;
    const double var_theory = second_sum / n - mean_theory * mean_theory;
    const MomentSummary emp = summarize(raw(recs));
    const std::string tag = hyp == Hypothesis::kH0 ? "h0" : "h1";

    MomentCheck mean{"mean_" + tag, mean_theory, emp.mean, emp.se_mean, false};
    MomentCheck var{"var_" + tag, var_theory, emp.variance, emp.se_variance, false};
    for (MomentCheck* m : {&mean, &var})
      m->pass = std::abs(m->empirical - m->theory) <= 3.0 * m->std_error;
    report.checks.push_back(mean);
    report.checks.push_back(var);
  }
  return report;
}

}  // namespace ota::experiments
