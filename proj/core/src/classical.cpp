#include "unifit/classical.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "parallel.hpp"
#include "unifit/distribution.hpp"
#include "unifit/errors.hpp"
#include "unifit/random.hpp"

namespace unifit {

namespace {

void require_unit_interval(const OrderedSample& s, const char* name) {
  if (s.front() < 0.0 || s.back() > 1.0)
    throw DomainError(std::string(name) + " statistic is defined only for data in [0,1]");
}

// Spacing j = 1..n+1 with X(0) = 0 and X(n+1) = 1.
double spacing(const OrderedSample& s, std::size_t j) {
  const std::size_t n = s.size();
  const double hi = j == n + 1 ? 1.0 : s[j - 1];
  const double lo = j == 1 ? 0.0 : s[j - 2];
  return hi - lo;
}

}  // namespace

double ks_stat(const OrderedSample& s) {
  const double n = static_cast<double>(s.size());
  double d_plus = -1.0;
  double d_minus = -1.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    const double f0 = std::clamp(s[k], 0.0, 1.0);
    const double j = static_cast<double>(k + 1);
    d_plus = std::max(d_plus, j / n - f0);
    d_minus = std::max(d_minus, f0 - (j - 1.0) / n);
  }
  return std::max(d_plus, d_minus);
}

double frozini_stat(const OrderedSample& s) {
  const double n = static_cast<double>(s.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k)
    sum += std::fabs(s[k] - (static_cast<double>(k) + 0.5) / n);
  return sum / std::sqrt(n);
}

double sherman_stat(const OrderedSample& s) {
  require_unit_interval(s, "Sherman");
  const std::size_t n = s.size();
  const double expected = 1.0 / static_cast<double>(n + 1);
  double sum = 0.0;
  for (std::size_t j = 1; j <= n + 1; ++j) sum += std::fabs(spacing(s, j) - expected);
  return 0.5 * sum;
}

double q_stat(const OrderedSample& s) {
  require_unit_interval(s, "Q");
  const std::size_t n = s.size();
  double squares = 0.0;
  double products = 0.0;
  for (std::size_t j = 1; j <= n + 1; ++j) {
    const double d = spacing(s, j);
    squares += d * d;
    if (j <= n) products += spacing(s, j + 1) * d;
  }
  return squares + products;
}

ClassicalMethod parse_classical_method(std::string_view label) {
  if (label == "KS" || label == "ks") return ClassicalMethod::kKS;
  if (label == "Frozini" || label == "frozini") return ClassicalMethod::kFrozini;
  if (label == "Sherman" || label == "sherman") return ClassicalMethod::kSherman;
  if (label == "Q" || label == "q") return ClassicalMethod::kQ;
  if (label == "Q-upper" || label == "q-upper") return ClassicalMethod::kQUpper;
  throw ArgumentError("unknown classical method '" + std::string(label) + "'");
}

const char* to_string(ClassicalMethod method) {
  switch (method) {
    case ClassicalMethod::kKS:
      return "KS";
    case ClassicalMethod::kFrozini:
      return "Frozini";
    case ClassicalMethod::kSherman:
      return "Sherman";
    case ClassicalMethod::kQ:
      return "Q";
    case ClassicalMethod::kQUpper:
      return "Q-upper";
  }
  return "?";
}

RejectionRule rejection_rule(ClassicalMethod method) {
  return method == ClassicalMethod::kQ ? RejectionRule::kEqualTail : RejectionRule::kUpperTail;
}

double classical_stat(ClassicalMethod method, const OrderedSample& sample) {
  switch (method) {
    case ClassicalMethod::kKS:
      return ks_stat(sample);
    case ClassicalMethod::kFrozini:
      return frozini_stat(sample);
    case ClassicalMethod::kSherman:
      return sherman_stat(sample);
    case ClassicalMethod::kQ:
    case ClassicalMethod::kQUpper:
      return q_stat(sample);
  }
  return 0.0;
}

std::vector<double> null_distribution(ClassicalMethod method, std::size_t n, std::size_t reps,
                                      std::uint64_t seed, unsigned workers) {
  if (n == 0) throw SampleSizeError("null distribution needs n >= 1");
  if (reps == 0) throw ArgumentError("reps must be positive");
  const auto null = DistributionSpec::uniform(0.0, 1.0);
  std::vector<double> stats(reps);
  detail::parallel_blocks(reps, workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream stream(seed, StreamPurpose::kCalibrate, r);
      stats[r] = classical_stat(method, sort_sample(sample_dist(null, n, stream)));
    }
  });
  std::sort(stats.begin(), stats.end());
  return stats;
}

namespace {

// 1-based order statistic index ceil(q * reps), kept inside [1, reps].
std::size_t order_index(double q, std::size_t reps) {
  const double raw = std::ceil(q * static_cast<double>(reps) - 1e-9);
  return std::clamp<std::size_t>(static_cast<std::size_t>(std::max(raw, 1.0)), 1, reps);
}

}  // namespace

CriticalValueTable critical_values_from(ClassicalMethod method, std::size_t n, double alpha,
                                        std::uint64_t seed,
                                        const std::vector<double>& sorted_null) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  if (sorted_null.empty()) throw ArgumentError("empty null distribution");
  CriticalValueTable t;
  t.method = to_string(method);
  t.n = n;
  t.alpha = alpha;
  t.reps = sorted_null.size();
  t.seed = seed;
  if (rejection_rule(method) == RejectionRule::kEqualTail) {
    t.value = sorted_null[order_index(1.0 - alpha / 2.0, t.reps) - 1];
    t.lower_value = sorted_null[order_index(alpha / 2.0, t.reps) - 1];
  } else {
    t.value = sorted_null[order_index(1.0 - alpha, t.reps) - 1];
  }
  return t;
}

CriticalValueTable mc_critical_value(ClassicalMethod method, std::size_t n, double alpha,
                                     std::size_t reps, std::uint64_t seed, unsigned workers) {
  return critical_values_from(method, n, alpha, seed,
                              null_distribution(method, n, reps, seed, workers));
}

double mc_p_value(ClassicalMethod method, double statistic,
                  const std::vector<double>& sorted_null) {
  const double reps = static_cast<double>(sorted_null.size());
  const auto at_least = static_cast<double>(
      sorted_null.end() - std::lower_bound(sorted_null.begin(), sorted_null.end(), statistic));
  const double upper = (1.0 + at_least) / (reps + 1.0);
  if (rejection_rule(method) != RejectionRule::kEqualTail) return upper;
  const auto at_most = static_cast<double>(
      std::upper_bound(sorted_null.begin(), sorted_null.end(), statistic) - sorted_null.begin());
  const double lower = (1.0 + at_most) / (reps + 1.0);
  return std::min(1.0, 2.0 * std::min(upper, lower));
}

TestResult classical_test(ClassicalMethod method, const OrderedSample& sample, double alpha,
                          const std::vector<double>& sorted_null) {
  const auto cv = critical_values_from(method, sample.size(), alpha, 0, sorted_null);
  TestResult r;
  r.method = to_string(method);
  r.alpha = alpha;
  r.rule = rejection_rule(method);
  r.statistic = classical_stat(method, sample);
  r.standardized = r.statistic;
  r.critical_value = cv.value;
  r.lower_critical_value = cv.lower_value;
  r.p_value = mc_p_value(method, r.statistic, sorted_null);
  r.reject = decide(r.rule, r.standardized, r.critical_value, r.lower_critical_value);
  return r;
}

// ---- cache -------------------------------------------------------------

namespace {

constexpr const char* kCacheHeader = "method\tn\talpha\treps\tseed\tvalue\tlower";

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

template <typename T>
T parse_field(const std::string& field, std::size_t line) {
  T v{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line, "bad cache field '" + field + "'");
  return v;
}

}  // namespace

void write_critical_values(std::ostream& out, const std::vector<CriticalValueTable>& entries) {
  out << kCacheHeader << '\n';
  for (const auto& e : entries) {
    out << e.method << '\t' << e.n << '\t' << shortest(e.alpha) << '\t' << e.reps << '\t'
        << e.seed << '\t' << shortest(e.value) << '\t'
        << (e.lower_value ? shortest(*e.lower_value) : std::string("-")) << '\n';
  }
}

std::vector<CriticalValueTable> read_critical_values(std::istream& in) {
  std::vector<CriticalValueTable> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == kCacheHeader) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, '\t');) f.push_back(cell);
    if (f.size() != 7) throw ParseError(line_no, "expected 7 tab-separated fields");
    CriticalValueTable e;
    e.method = f[0];
    e.n = parse_field<std::size_t>(f[1], line_no);
    e.alpha = parse_field<double>(f[2], line_no);
    e.reps = parse_field<std::size_t>(f[3], line_no);
    e.seed = parse_field<std::uint64_t>(f[4], line_no);
    e.value = parse_field<double>(f[5], line_no);
    if (f[6] != "-") e.lower_value = parse_field<double>(f[6], line_no);
    out.push_back(std::move(e));
  }
  return out;
}

CriticalValueCache::CriticalValueCache(std::filesystem::path file) : file_(std::move(file)) {
  std::ifstream in(*file_);
  if (!in) return;
  for (auto& e : read_critical_values(in)) {
    Key key{e.method, e.n, e.alpha, e.reps, e.seed};
    entries_.insert_or_assign(std::move(key), std::move(e));
  }
}

CriticalValueCache CriticalValueCache::from_environment() {
  const char* dir = std::getenv("UNIFIT_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  std::filesystem::create_directories(dir);
  return CriticalValueCache(std::filesystem::path(dir) / "critical_values.tsv");
}

std::optional<CriticalValueTable> CriticalValueCache::find(const std::string& method,
                                                           std::size_t n, double alpha,
                                                           std::size_t reps,
                                                           std::uint64_t seed) const {
  auto it = entries_.find(Key{method, n, alpha, reps, seed});
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CriticalValueCache::insert(const CriticalValueTable& entry) {
  entries_.insert_or_assign(Key{entry.method, entry.n, entry.alpha, entry.reps, entry.seed},
                            entry);
  if (!file_) return;
  const bool fresh = !std::filesystem::exists(*file_);
  std::ofstream out(*file_, std::ios::app);
  if (!out) throw std::runtime_error("cannot write critical-value cache " + file_->string());
  std::ostringstream rec;
  write_critical_values(rec, {entry});
  const std::string text = rec.str();
  // write_critical_values always starts with the header line.
  out << (fresh ? text : text.substr(text.find('\n') + 1));
}

CriticalValueTable CriticalValueCache::get(ClassicalMethod method, std::size_t n, double alpha,
                                           std::size_t reps, std::uint64_t seed,
                                           unsigned workers) {
  if (auto hit = find(to_string(method), n, alpha, reps, seed)) return *hit;
  auto fresh = mc_critical_value(method, n, alpha, reps, seed, workers);
  insert(fresh);
  return fresh;
}

}  // namespace unifit
