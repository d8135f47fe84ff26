#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "unifit/test_result.hpp"

namespace unifit::cli {

inline constexpr int kReportFormatVersion = 1;

/// Outcome of one `test` / `test-censored` run.
struct Report {
  int format_version = kReportFormatVersion;
  std::string tool_version;
  std::string method;
  std::size_t n = 0;
  std::optional<std::size_t> events;  // censored runs only
  double statistic = 0.0;
  double standardized = 0.0;
  double critical_value = 0.0;
  std::optional<double> lower_critical_value;
  double p_value = 1.0;
  double alpha = 0.05;
  std::string rule;
  std::string decision;  // "reject" or "accept"
  std::string standardization = "none";
  std::optional<std::uint64_t> seed;  // Monte Carlo calibrated methods
  std::optional<std::size_t> reps;
  std::vector<std::string> warnings;

  bool rejected() const noexcept { return decision == "reject"; }

  friend bool operator==(const Report&, const Report&) = default;
};

Report make_report(const TestResult& result, std::size_t n, const std::string& standardization);

/// Throws ArgumentError when a numeric field is not finite or the decision
/// disagrees with the rejection rule.
void validate_report(const Report& report);

void write_report_text(std::ostream& out, const Report& report);
void write_report_json(std::ostream& out, const Report& report);
Report read_report_json(std::istream& in);

}  // namespace unifit::cli
