#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "ota/attacker.hpp"
#include "ota/dummy_schemes.hpp"

namespace ota::experiments {

enum class GeometryMode {
  kPerTrial,  // fresh placement and fading for every block
  kFixed,     // placement and user fading drawn once per seed
};

enum class Pipeline {
  kFast,  // reduced sampler, same law of the statistic
  kFull,  // materialises U, X and the full received vector
};

enum class Calibration { kAnalytic, kEmpirical };

struct SystemConfig {
  std::size_t K = 100;
  std::size_t L = 1000;
  double delta = 0.01;
  double P0 = 1e-3;
  double noise_dbm = -110.0;
  double radius = 100.0;
  double fading_threshold = 0.2;
  double pathloss_exponent = 4.0;
  SchemeKind scheme = SchemeKind::kCorrelated;
  AttackStrategy attack{};
  std::size_t trials = 100000;
  std::uint64_t seed = 1;
  double target_pf = 0.01;
  double legit_power_factor = 1.0;

  double data_variance = 1.0;
  std::optional<double> sigma_d2;  // defaults to data_variance
  GeometryMode geometry = GeometryMode::kPerTrial;
  Pipeline pipeline = Pipeline::kFast;
  Calibration calibration = Calibration::kAnalytic;
  std::size_t hist_bins = 100;
  std::size_t threads = 0;  // 0: hardware concurrency

  /// round(delta * L)
  std::size_t D() const;
  /// sigma^2 in watts from noise_dbm.
  double noise_variance() const;
  double dummy_variance() const { return sigma_d2.value_or(data_variance); }
  /// Throws ConfigError on inconsistent values.
  void validate() const;
};

double dbm_to_watts(double dbm);

/// Sets one field from its textual value. Throws ConfigError on an unknown
/// key or a malformed value.
void apply_setting(SystemConfig& config, std::string_view key,
                   std::string_view value);

/// Reads `key = value` lines; '#' starts a comment.
void load_config(SystemConfig& config, std::istream& in);
void load_config_file(SystemConfig& config, const std::string& path);

std::string_view to_string(GeometryMode m);
std::string_view to_string(Pipeline p);
std::string_view to_string(Calibration c);

}  // namespace ota::experiments
