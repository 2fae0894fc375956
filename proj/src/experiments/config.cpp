#include "ota/experiments/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>

#include "ota/errors.hpp"

namespace ota::experiments {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::size_t SystemConfig::D() const {
  return static_cast<std::size_t>(std::llround(delta * static_cast<double>(L)));
}

double SystemConfig::noise_variance() const { return dbm_to_watts(noise_dbm); }

void SystemConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (K < 1) throw ConfigError("K must be >= 1");
  if (L < 1) throw ConfigError("L must be >= 1");
  if (!(delta >= 0.0) || !std::isfinite(delta)) throw ConfigError("delta must be >= 0");
  if (D() < 1) throw ConfigError("delta * L must round to at least one dummy");
  if (!positive(P0)) throw ConfigError("P0 must be positive");
  if (!std::isfinite(noise_dbm)) throw ConfigError("noise_dbm must be finite");
  if (!positive(radius)) throw ConfigError("radius must be positive");
  if (!(fading_threshold >= 0.0)) throw ConfigError("fading_threshold must be >= 0");
  if (!positive(pathloss_exponent)) throw ConfigError("pathloss_exponent must be positive");
  if (trials < 1) throw ConfigError("trials must be >= 1");
  if (!(target_pf > 0.0 && target_pf < 1.0)) throw ConfigError("target_pf must lie in (0, 1)");
  if (!positive(legit_power_factor)) throw ConfigError("legit_power_factor must be positive");
  if (!positive(data_variance)) throw ConfigError("data_variance must be positive");
  if (sigma_d2 && !positive(*sigma_d2)) throw ConfigError("sigma_d2 must be positive");
  if (hist_bins < 1) throw ConfigError("hist_bins must be >= 1");
  attack.validate();
}

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

double to_double(std::string_view key, std::string_view text) {
  const std::string s(text);
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("bad number for " + std::string(key) + ": '" + s + "'");
}

std::uint64_t to_uint(std::string_view key, std::string_view text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty())
    throw ConfigError("bad integer for " + std::string(key) + ": '" +
                      std::string(text) + "'");
  return v;
}

}  // namespace

void apply_setting(SystemConfig& c, std::string_view key,
                   std::string_view value) {
  if (key == "K") c.K = to_uint(key, value);
  else if (key == "L") c.L = to_uint(key, value);
  else if (key == "delta") c.delta = to_double(key, value);
  else if (key == "P0") c.P0 = to_double(key, value);
  else if (key == "noise_dbm") c.noise_dbm = to_double(key, value);
  else if (key == "radius") c.radius = to_double(key, value);
  else if (key == "fading_threshold") c.fading_threshold = to_double(key, value);
  else if (key == "pathloss_exponent") c.pathloss_exponent = to_double(key, value);
  else if (key == "scheme") c.scheme = parse_scheme(value);
  else if (key == "attack") c.attack.kind = parse_attack(value);
  else if (key == "power_scale") c.attack.power_scale = to_double(key, value);
  else if (key == "trials") c.trials = to_uint(key, value);
  else if (key == "seed") c.seed = to_uint(key, value);
  else if (key == "target_pf") c.target_pf = to_double(key, value);
  else if (key == "legit_power_factor") c.legit_power_factor = to_double(key, value);
  else if (key == "data_variance") c.data_variance = to_double(key, value);
  else if (key == "sigma_d2") c.sigma_d2 = to_double(key, value);
  else if (key == "hist_bins") c.hist_bins = to_uint(key, value);
  else if (key == "threads") c.threads = to_uint(key, value);
  else if (key == "geometry") {
    if (value == "per-trial") c.geometry = GeometryMode::kPerTrial;
    else if (value == "fixed") c.geometry = GeometryMode::kFixed;
    else throw ConfigError("geometry must be per-trial or fixed");
  } else if (key == "pipeline") {
    if (value == "fast") c.pipeline = Pipeline::kFast;
    else if (value == "full") c.pipeline = Pipeline::kFull;
    else throw ConfigError("pipeline must be fast or full");
  } else if (key == "calibration") {
    if (value == "analytic") c.calibration = Calibration::kAnalytic;
    else if (value == "empirical") c.calibration = Calibration::kEmpirical;
    else throw ConfigError("calibration must be analytic or empirical");
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void load_config(SystemConfig& config, std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    apply_setting(config, key, value);
  }
}

void load_config_file(SystemConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  load_config(config, in);
}

std::string_view to_string(GeometryMode m) {
  return m == GeometryMode::kFixed ? "fixed" : "per-trial";
}
std::string_view to_string(Pipeline p) {
  return p == Pipeline::kFull ? "full" : "fast";
}
std::string_view to_string(Calibration c) {
  return c == Calibration::kEmpirical ? "empirical" : "analytic";
}

}  // namespace ota::experiments
