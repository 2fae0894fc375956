#include "ota/experiments/csv.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace ota::experiments {

void write_roc_header(std::ostream& out) { out << "scheme,delta,threshold,pf,pd\n"; }

void write_roc_rows(std::ostream& out, SchemeKind scheme, double delta,
                    const RocCurve& curve) {
  for (const auto& p : curve.points)
    fmt::print(out, "{},{},{},{},{}\n", to_string(scheme), delta, p.threshold,
               p.pf, p.pd);
}

void write_tradeoff_header(std::ostream& out) {
  out << "scheme,delta,overhead_fraction,target_pf,pd,pd_stderr\n";
}

void write_tradeoff_rows(std::ostream& out, SchemeKind scheme,
                         std::span<const TradeoffPoint> points) {
  for (const auto& p : points)
    fmt::print(out, "{},{},{},{},{},{}\n", to_string(scheme), p.delta,
               p.overhead_fraction, p.target_pf, p.pd, p.pd_stderr);
}

void write_hist_header(std::ostream& out) {
  out << "scheme,hypothesis,bin_left,bin_right,count\n";
}

void write_hist_rows(std::ostream& out, const Histogram& hist) {
  for (const auto* counts : {&hist.h0, &hist.h1}) {
    const char* label = counts == &hist.h0 ? "H0" : "H1";
    for (std::size_t i = 0; i < counts->size(); ++i)
      fmt::print(out, "{},{},{},{},{}\n", to_string(hist.scheme), label,
                 std::pow(10.0, hist.edges[i]), std::pow(10.0, hist.edges[i + 1]),
                 (*counts)[i]);
  }
}

void write_moments_header(std::ostream& out) {
  out << "scheme,moment,theory,empirical,stderr,pass\n";
}

void write_moments_rows(std::ostream& out, const MomentReport& report) {
  for (const auto& m : report.checks)
    fmt::print(out, "{},{},{},{},{},{}\n", to_string(report.scheme), m.moment,
               m.theory, m.empirical, m.std_error, m.pass ? "true" : "false");
}

void write_trials_header(std::ostream& out) {
  out << "block_index,hypothesis,statistic,eta,beta,k_active\n";
}

void write_trials_rows(std::ostream& out, std::span<const TrialRecord> trials) {
  for (const auto& r : trials)
    fmt::print(out, "{},{},{},{},{},{}\n", r.block_index, to_string(r.hypothesis),
               r.statistic, r.eta, r.beta, r.k_active);
}

}  // namespace ota::experiments
