#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>

namespace ota {

/// Stream-id tags. Each purpose in a trial draws from its own stream so that
/// changing one component never shifts the draws of another.
namespace streams {
inline constexpr std::uint64_t kSharedSecret = 0x5EC2E7;  // dummy indices, U
inline constexpr std::uint64_t kGeometry = 0x6E0;
inline constexpr std::uint64_t kFading = 0xFAD;
inline constexpr std::uint64_t kData = 0xDA7A;
inline constexpr std::uint64_t kAttack = 0xA77AC;
inline constexpr std::uint64_t kNoise = 0x4015E;
}  // namespace streams

/// Mixes an ordered list of integers into a single 64-bit stream id.
std::uint64_t mix_stream_id(std::initializer_list<std::uint64_t> parts);

/// Deterministic pseudo-random stream keyed by (seed, stream id).
///
/// Two streams built from the same pair produce bit-identical sequences on any
/// conforming standard library, since the engine (mt19937_64) and the seeding
/// procedure (seed_seq) are fully specified. A stream is not thread-safe;
/// concurrent consumers must each hold their own stream.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  /// Uniform double in (0, 1], on a 2^-53 grid.
  double uniform() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  void fill_uniform(std::span<double> out) {
    for (double& u : out) u = uniform();
  }

  /// Child stream keyed by this stream's id and `tag`.
  RngStream derive(std::uint64_t tag) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace ota
