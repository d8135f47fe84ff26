#pragma once

#include <cstdint>
#include <random>

namespace unifit {

/// Purpose tags keep calibration draws disjoint from evaluation draws made
/// under the same user seed.
enum class StreamPurpose : std::uint32_t {
  kEvaluate = 0,
  kCalibrate = 1,
  kAdhoc = 2,
};

/// Independent deterministic substream for one replication.
///
/// Each (seed, purpose, index) triple seeds its own engine, so a replication
/// draws the same numbers whichever thread runs it.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index);

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double open_uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal by inversion.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace unifit
