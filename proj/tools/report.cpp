#include "report.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>

#include "json.hpp"
#include "unifit/errors.hpp"

#ifndef UNIFIT_VERSION
#define UNIFIT_VERSION "0.0.0"
#endif

namespace unifit::cli {

namespace {

RejectionRule rule_from(const std::string& s) {
  if (s == to_string(RejectionRule::kTwoSidedNormal)) return RejectionRule::kTwoSidedNormal;
  if (s == to_string(RejectionRule::kUpperTail)) return RejectionRule::kUpperTail;
  if (s == to_string(RejectionRule::kEqualTail)) return RejectionRule::kEqualTail;
  throw ArgumentError("unknown rejection rule '" + s + "'");
}

}  // namespace

Report make_report(const TestResult& result, std::size_t n, const std::string& standardization) {
  Report r;
  r.tool_version = UNIFIT_VERSION;
  r.method = result.method;
  r.n = n;
  r.statistic = result.statistic;
  r.standardized = result.standardized;
  r.critical_value = result.critical_value;
  r.lower_critical_value = result.lower_critical_value;
  r.p_value = result.p_value;
  r.alpha = result.alpha;
  r.rule = to_string(result.rule);
  r.decision = result.reject ? "reject" : "accept";
  r.standardization = standardization;
  return r;
}

void validate_report(const Report& r) {
  for (double v : {r.statistic, r.standardized, r.critical_value, r.p_value, r.alpha})
    if (!std::isfinite(v)) throw ArgumentError("report carries a non-finite value");
  if (r.lower_critical_value && !std::isfinite(*r.lower_critical_value))
    throw ArgumentError("report carries a non-finite value");
  const bool reject =
      decide(rule_from(r.rule), r.standardized, r.critical_value, r.lower_critical_value);
  if (reject != r.rejected()) throw ArgumentError("report decision disagrees with its rule");
}

void write_report_text(std::ostream& out, const Report& r) {
  const auto old_flags = out.flags();
  const auto old_precision = out.precision();
  out << std::setprecision(10);
  auto line = [&](const char* key, const auto& value) {
    out << "  " << std::left << std::setw(16) << key << value << '\n';
  };
  out << "unifit " << r.tool_version << " - goodness of fit to U(0,1)\n";
  line("method", r.method);
  line("n", r.n);
  if (r.events) line("uncensored", *r.events);
  line("standardization", r.standardization);
  line("statistic", r.statistic);
  line("standardized", r.standardized);
  line("critical value", r.critical_value);
  if (r.lower_critical_value) line("lower critical", *r.lower_critical_value);
  line("rule", r.rule);
  line("p-value", r.p_value);
  line("alpha", r.alpha);
  if (r.reps) line("mc reps", *r.reps);
  if (r.seed) line("mc seed", *r.seed);
  line("decision", r.rejected() ? "reject H0 (not U(0,1))" : "accept H0");
  out.flags(old_flags);
  out.precision(old_precision);
}

void write_report_json(std::ostream& out, const Report& r) {
  nlohmann::json j = {{"format_version", r.format_version},
                      {"tool_version", r.tool_version},
                      {"method", r.method},
                      {"n", r.n},
                      {"statistic", r.statistic},
                      {"standardized", r.standardized},
                      {"critical_value", r.critical_value},
                      {"p_value", r.p_value},
                      {"alpha", r.alpha},
                      {"rule", r.rule},
                      {"decision", r.decision},
                      {"standardization", r.standardization},
                      {"warnings", r.warnings}};
  if (r.events) j["events"] = *r.events;
  if (r.lower_critical_value) j["lower_critical_value"] = *r.lower_critical_value;
  if (r.seed) j["seed"] = *r.seed;
  if (r.reps) j["reps"] = *r.reps;
  out << j.dump(2) << '\n';
}

Report read_report_json(std::istream& in) {
  const auto j = nlohmann::json::parse(in);
  Report r;
  r.format_version = j.at("format_version").get<int>();
  if (r.format_version != kReportFormatVersion)
    throw ArgumentError("unsupported report format_version " + std::to_string(r.format_version));
  r.tool_version = j.at("tool_version").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.n = j.at("n").get<std::size_t>();
  r.statistic = j.at("statistic").get<double>();
  r.standardized = j.at("standardized").get<double>();
  r.critical_value = j.at("critical_value").get<double>();
  r.p_value = j.at("p_value").get<double>();
  r.alpha = j.at("alpha").get<double>();
  r.rule = j.at("rule").get<std::string>();
  r.decision = j.at("decision").get<std::string>();
  r.standardization = j.at("standardization").get<std::string>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("events")) r.events = j["events"].get<std::size_t>();
  if (j.contains("lower_critical_value"))
    r.lower_critical_value = j["lower_critical_value"].get<double>();
  if (j.contains("seed")) r.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("reps")) r.reps = j["reps"].get<std::size_t>();
  return r;
}

}  // namespace unifit::cli
