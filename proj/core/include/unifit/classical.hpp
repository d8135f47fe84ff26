#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "unifit/sample.hpp"
#include "unifit/test_result.hpp"

namespace unifit {

/// Kolmogorov-Smirnov distance to the U(0,1) CDF (truncated to [0,1]).
double ks_stat(const OrderedSample& sample);

/// Frozini: n^{-1/2} * sum_j |X(j) - (j - 0.5)/n|.
double frozini_stat(const OrderedSample& sample);

/// Sherman: half the L1 distance of the n+1 spacings (with X(0)=0,
/// X(n+1)=1) from 1/(n+1). Throws DomainError for data outside [0,1].
double sherman_stat(const OrderedSample& sample);

/// Quesenberry-Miller Q: sum of squared spacings plus the sum of products of
/// adjacent spacings, boundary X(0)=0, X(n+1)=1. Throws DomainError for data
/// outside [0,1].
double q_stat(const OrderedSample& sample);

enum class ClassicalMethod { kKS, kFrozini, kSherman, kQ, kQUpper };

/// Labels "KS", "Frozini", "Sherman", "Q" (two-sided equal tail) and
/// "Q-upper" (one-sided). Throws ArgumentError for anything else.
ClassicalMethod parse_classical_method(std::string_view label);
const char* to_string(ClassicalMethod method);
RejectionRule rejection_rule(ClassicalMethod method);

double classical_stat(ClassicalMethod method, const OrderedSample& sample);

/// Sorted null statistics of `method` over `reps` U(0,1) samples of size n.
/// Deterministic in (method, n, reps, seed) and independent of `workers`.
std::vector<double> null_distribution(ClassicalMethod method, std::size_t n, std::size_t reps,
                                      std::uint64_t seed, unsigned workers = 0);

/// Monte Carlo critical value(s) of a classical test.
struct CriticalValueTable {
  std::string method;
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double value = 0.0;                 // upper critical value
  std::optional<double> lower_value;  // equal-tail methods only

  friend bool operator==(const CriticalValueTable&, const CriticalValueTable&) = default;
};

/// Critical values read off an already sorted null distribution: the upper
/// value is order statistic ceil((1 - a) * reps), a = alpha for one-sided
/// rules and alpha/2 for the equal-tail rule, whose lower value is order
/// statistic ceil(alpha/2 * reps).
CriticalValueTable critical_values_from(ClassicalMethod method, std::size_t n, double alpha,
                                        std::uint64_t seed, const std::vector<double>& sorted_null);

CriticalValueTable mc_critical_value(ClassicalMethod method, std::size_t n, double alpha,
                                     std::size_t reps, std::uint64_t seed, unsigned workers = 0);

/// Monte Carlo p-value (1 + #{null at least as extreme}) / (reps + 1); for the
/// equal-tail rule twice the smaller tail, capped at 1.
double mc_p_value(ClassicalMethod method, double statistic, const std::vector<double>& sorted_null);

/// Runs a classical test against an explicit null distribution.
TestResult classical_test(ClassicalMethod method, const OrderedSample& sample, double alpha,
                          const std::vector<double>& sorted_null);

/// On-disk cache of critical values, one tab-separated record per line:
///   method  n  alpha  reps  seed  value  lower
/// `lower` is "-" for one-sided methods. Doubles are written in shortest
/// round-trip form, so reading back gives bit-identical values.
class CriticalValueCache {
 public:
  CriticalValueCache() = default;
  explicit CriticalValueCache(std::filesystem::path file);

  /// Cache stored at $UNIFIT_CACHE_DIR/critical_values.tsv, or memory-only
  /// when the variable is unset.
  static CriticalValueCache from_environment();

  std::optional<CriticalValueTable> find(const std::string& method, std::size_t n, double alpha,
                                         std::size_t reps, std::uint64_t seed) const;
  void insert(const CriticalValueTable& entry);

  /// Looks up, or computes and stores.
  CriticalValueTable get(ClassicalMethod method, std::size_t n, double alpha, std::size_t reps,
                         std::uint64_t seed, unsigned workers = 0);

  std::size_t size() const noexcept { return entries_.size(); }
  const std::optional<std::filesystem::path>& file() const noexcept { return file_; }

 private:
  using Key = std::tuple<std::string, std::size_t, double, std::size_t, std::uint64_t>;
  std::optional<std::filesystem::path> file_;
  std::map<Key, CriticalValueTable> entries_;
};

void write_critical_values(std::ostream& out, const std::vector<CriticalValueTable>& entries);
std::vector<CriticalValueTable> read_critical_values(std::istream& in);

}  // namespace unifit
