#pragma once

#include <iosfwd>
#include <span>

#include "ota/experiments/harness.hpp"

namespace ota::experiments {

void write_roc_header(std::ostream& out);
void write_roc_rows(std::ostream& out, SchemeKind scheme, double delta,
                    const RocCurve& curve);

void write_tradeoff_header(std::ostream& out);
void write_tradeoff_rows(std::ostream& out, SchemeKind scheme,
                         std::span<const TradeoffPoint> points);

void write_hist_header(std::ostream& out);
void write_hist_rows(std::ostream& out, const Histogram& hist);

void write_moments_header(std::ostream& out);
void write_moments_rows(std::ostream& out, const MomentReport& report);

void write_trials_header(std::ostream& out);
void write_trials_rows(std::ostream& out, std::span<const TrialRecord> trials);

}  // namespace ota::experiments
