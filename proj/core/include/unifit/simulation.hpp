#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "unifit/classical.hpp"
#include "unifit/distribution.hpp"

namespace unifit {

enum class Method { kDelta, kDeltaCensored, kKS, kFrozini, kSherman, kQ, kQUpper };

/// "delta", "censored", "KS", "Frozini", "Sherman", "Q", "Q-upper".
Method parse_method(std::string_view label);
const char* to_string(Method method);
bool is_classical(Method method);
ClassicalMethod to_classical(Method method);

struct SimulationConfig {
  DistributionSpec dist = DistributionSpec::uniform(0.0, 1.0);
  std::size_t n = 100;
  double alpha = 0.05;
  std::size_t reps = 10000;
  std::uint64_t seed = 1;
  std::optional<double> censoring_target;  // P(X > C), C ~ U(0, c)
  unsigned workers = 0;                    // 0 = hardware concurrency

  /// Throws ArgumentError on reps == 0, alpha outside (0,1), target outside (0,1), n < 2.
  void validate() const;
};

/// One cell of a power table.
struct PowerRow {
  std::string table;
  std::string dist;  // display name, e.g. "U(0,1.2)"
  std::string method;
  std::size_t n = 0;
  double level = 0.0;
  std::size_t rejections = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double rate = 0.0;  // rejections / reps
  std::optional<double> censoring_target;
  std::optional<double> censoring_bound;  // calibrated c
  std::optional<double> censored_fraction;  // observed share of status 0
  std::size_t undefined = 0;  // replications where the statistic was undefined (counted as accept)
  std::optional<double> paper_value;
  std::optional<double> diff;  // rate - paper_value
  bool flagged = false;
};

struct PowerTable {
  std::string id;
  std::string title;
  std::vector<PowerRow> rows;
};

/// Rejection rates of `method` at several levels, all from the same draws
/// (so nested critical regions give nested rates). Deterministic in the
/// config and independent of the worker count. Classical methods take
/// critical values from `cache` (a private in-memory cache when null),
/// calibrated with reps = config.reps under the calibration substreams of
/// config.seed.
std::vector<PowerRow> rejection_rates(const SimulationConfig& config, Method method,
                                      std::span<const double> levels,
                                      CriticalValueCache* cache = nullptr);

/// Single-level form using config.alpha.
PowerRow rejection_rate(const SimulationConfig& config, Method method,
                        CriticalValueCache* cache = nullptr);

/// Attaches a published value to a computed cell and sets diff/flag:
/// flagged when |rate - paper| > 2 * sqrt(p (1-p) / reps) + 0.003.
void attach_paper_value(PowerRow& row, double paper_value);

}  // namespace unifit
