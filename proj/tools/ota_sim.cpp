// Command-line front end for the Monte Carlo experiments. Each subcommand
// writes one CSV into --out.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "ota/errors.hpp"
#include "ota/experiments/csv.hpp"
#include "ota/experiments/harness.hpp"
#include "ota/simd/kernels.hpp"

namespace ex = ota::experiments;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;

struct Options {
  std::string config_path;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<std::string> scheme;
  std::vector<double> deltas;
  std::optional<std::string> attack;
  std::optional<double> power_scale;
  std::optional<double> legit_power_factor;
  std::optional<std::size_t> threads;
  std::optional<std::string> geometry;
  std::optional<std::string> pipeline;
  std::optional<std::string> calibration;
  std::optional<std::size_t> bins;
  bool dump_trials = false;
};

struct Resolved {
  ex::SystemConfig config;
  std::vector<ota::SchemeKind> schemes;
  std::vector<double> deltas;
};

// Precedence: flags, then the config file, then built-in defaults.
Resolved resolve(const Options& o, const std::vector<double>& default_deltas) {
  Resolved r;
  ex::SystemConfig& c = r.config;
  bool scheme_from_file = false;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ota::ConfigError("cannot open config file '" + o.config_path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    std::string line;
    for (std::istringstream lines(buf.str()); std::getline(lines, line);) {
      const auto first = line.find_first_not_of(" \t");
      if (first != std::string::npos && line.compare(first, 6, "scheme") == 0 &&
          line.find('=') != std::string::npos)
        scheme_from_file = true;
    }
    ex::load_config(c, buf);
  }
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.attack) ex::apply_setting(c, "attack", *o.attack);
  if (o.power_scale) c.attack.power_scale = *o.power_scale;
  if (o.legit_power_factor) c.legit_power_factor = *o.legit_power_factor;
  if (o.threads) c.threads = *o.threads;
  if (o.geometry) ex::apply_setting(c, "geometry", *o.geometry);
  if (o.pipeline) ex::apply_setting(c, "pipeline", *o.pipeline);
  if (o.calibration) ex::apply_setting(c, "calibration", *o.calibration);
  if (o.bins) c.hist_bins = *o.bins;

  if (o.scheme && *o.scheme != "both") {
    c.scheme = ota::parse_scheme(*o.scheme);
    r.schemes = {c.scheme};
  } else if (!o.scheme && scheme_from_file) {
    r.schemes = {c.scheme};
  } else {
    r.schemes = {ota::SchemeKind::kCorrelated, ota::SchemeKind::kUncorrelated};
  }

  if (!o.deltas.empty()) r.deltas = o.deltas;
  else if (!default_deltas.empty()) r.deltas = default_deltas;
  else r.deltas = {c.delta};

  for (double d : r.deltas) {
    ex::SystemConfig probe = c;
    probe.delta = d;
    probe.validate();
  }
  return r;
}

std::ofstream open_csv(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ota::ConfigError("cannot write " + path.string());
  return out;
}

void dump(const Options& o, const std::vector<ex::TrialRecord>& trials) {
  if (!o.dump_trials) return;
  auto out = open_csv(o.out_dir, "trials.csv");
  ex::write_trials_header(out);
  ex::write_trials_rows(out, trials);
}

int cmd_roc(const Options& o) {
  const Resolved r = resolve(o, {});
  auto out = open_csv(o.out_dir, "roc.csv");
  ex::write_roc_header(out);
  std::vector<ex::TrialRecord> trials;
  for (auto scheme : r.schemes) {
    for (double delta : r.deltas) {
      ex::SystemConfig c = r.config;
      c.scheme = scheme;
      c.delta = delta;
      const auto curve = ex::roc_curve(c, o.dump_trials ? &trials : nullptr);
      ex::write_roc_rows(out, scheme, delta, curve);
      fmt::print(stderr, "roc {} delta={} auc={:.4f}\n", ota::to_string(scheme),
                 delta, curve.auc);
    }
  }
  dump(o, trials);
  return 0;
}

int cmd_tradeoff(const Options& o) {
  const Resolved r = resolve(o, {0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.5});
  auto out = open_csv(o.out_dir, "tradeoff.csv");
  ex::write_tradeoff_header(out);
  std::vector<ex::TrialRecord> trials;
  for (auto scheme : r.schemes) {
    ex::SystemConfig c = r.config;
    c.scheme = scheme;
    const auto points = ex::tradeoff_curve(c, r.deltas, o.dump_trials ? &trials : nullptr);
    ex::write_tradeoff_rows(out, scheme, points);
    for (const auto& p : points)
      fmt::print(stderr, "tradeoff {} delta={} pd={:.4f} +/- {:.4f}\n",
                 ota::to_string(scheme), p.delta, p.pd, p.pd_stderr);
  }
  dump(o, trials);
  return 0;
}

int cmd_hist(const Options& o) {
  const Resolved r = resolve(o, {});
  auto out = open_csv(o.out_dir, "hist.csv");
  ex::write_hist_header(out);
  std::vector<ex::TrialRecord> trials;
  for (auto scheme : r.schemes) {
    for (double delta : r.deltas) {
      ex::SystemConfig c = r.config;
      c.scheme = scheme;
      c.delta = delta;
      const auto h = ex::histogram_export(c, o.dump_trials ? &trials : nullptr);
      ex::write_hist_rows(out, h);
      fmt::print(stderr, "hist {} delta={} overlap={:.4f}\n",
                 ota::to_string(scheme), delta, h.overlap);
    }
  }
  dump(o, trials);
  return 0;
}

int cmd_moments(const Options& o) {
  const Resolved r = resolve(o, {});
  auto out = open_csv(o.out_dir, "moments.csv");
  ex::write_moments_header(out);
  std::vector<ex::TrialRecord> trials;
  bool ok = true;
  for (auto scheme : r.schemes) {
    for (double delta : r.deltas) {
      ex::SystemConfig c = r.config;
      c.scheme = scheme;
      c.delta = delta;
      const auto report = ex::validate_moments(c, o.dump_trials ? &trials : nullptr);
      ex::write_moments_rows(out, report);
      for (const auto& m : report.checks)
        fmt::print(stderr, "{} {} theory={:.6e} empirical={:.6e} se={:.3e} {}\n",
                   ota::to_string(scheme), m.moment, m.theory, m.empirical,
                   m.std_error, m.pass ? "pass" : "FAIL");
      ok = ok && report.all_pass();
    }
  }
  dump(o, trials);
  return ok ? 0 : kExitValidation;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--config", o.config_path, "key = value configuration file");
  sub->add_option("--trials", o.trials, "Monte Carlo blocks");
  sub->add_option("--seed", o.seed, "64-bit seed");
  sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  sub->add_option("--scheme", o.scheme, "correlated, uncorrelated or both")
      ->check(CLI::IsMember({"correlated", "uncorrelated", "both"}));
  sub->add_option("--delta", o.deltas, "dummy ratio D/L, comma separated")
      ->delimiter(',');
  sub->add_option("--attack", o.attack, "attack strategy")
      ->check(CLI::IsMember({"none", "gaussian", "idle", "scaled"}));
  sub->add_option("--power-scale", o.power_scale, "attacker power scale");
  sub->add_option("--legit-power-factor", o.legit_power_factor,
                  "legitimate per-symbol power multiplier");
  sub->add_option("--threads", o.threads, "worker threads (0: all cores)");
  sub->add_option("--geometry", o.geometry, "per-trial or fixed")
      ->check(CLI::IsMember({"per-trial", "fixed"}));
  sub->add_option("--pipeline", o.pipeline, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));
  sub->add_option("--calibration", o.calibration, "analytic or empirical threshold")
      ->check(CLI::IsMember({"analytic", "empirical"}));
  sub->add_option("--bins", o.bins, "histogram bins");
  sub->add_flag("--dump-trials", o.dump_trials, "also write trials.csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Over-the-air aggregation attack-detection simulator"};
  app.require_subcommand(1);
  Options o;
  std::string isa;
  app.add_option("--simd", isa, "kernel set: scalar or avx2");

  struct Sub {
    const char* name;
    const char* help;
    int (*run)(const Options&);
  };
  const Sub subs[] = {
      {"roc", "ROC curves (roc.csv)", cmd_roc},
      {"tradeoff", "P_D versus dummy overhead (tradeoff.csv)", cmd_tradeoff},
      {"hist", "energy histograms (hist.csv)", cmd_hist},
      {"validate-moments", "Monte Carlo vs closed-form moments (moments.csv)", cmd_moments},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_common(sub, o);
    handles.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (isa == "scalar") ota::simd::set_isa(ota::simd::Isa::kScalar);
    else if (isa == "avx2") ota::simd::set_isa(ota::simd::Isa::kAvx2);
    else if (!isa.empty()) throw ota::ConfigError("unknown --simd value '" + isa + "'");
    for (std::size_t i = 0; i < handles.size(); ++i)
      if (handles[i]->parsed()) return subs[i].run(o);
  } catch (const ota::ConfigError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const ota::ParameterError& e) {
    fmt::print(stderr, "config error: {}\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
