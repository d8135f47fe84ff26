#include "unifit/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unifit/errors.hpp"

namespace unifit {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw SampleSizeError("sample is empty");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]))
      throw ArgumentError("sample value #" + std::to_string(i) + " is not finite");
  }
}

OrderedSample::OrderedSample(const Sample& sample)
    : values_(sample.values().begin(), sample.values().end()) {
  std::stable_sort(values_.begin(), values_.end());
}

OrderedSample sort_sample(const Sample& sample) { return OrderedSample(sample); }

double edf(const OrderedSample& sample, double t) {
  const auto v = sample.values();
  const auto count = std::upper_bound(v.begin(), v.end(), t) - v.begin();
  return static_cast<double>(count) / static_cast<double>(v.size());
}

CensoredSample::CensoredSample(std::vector<CensoredObservation> observations)
    : obs_(std::move(observations)) {
  if (obs_.empty()) throw SampleSizeError("censored sample is empty");
  for (std::size_t i = 0; i < obs_.size(); ++i) {
    const auto& o = obs_[i];
    if (!std::isfinite(o.time) || o.time < 0.0)
      throw ArgumentError("observation #" + std::to_string(i) +
                          ": time must be finite and nonnegative");
    if (o.status != 0 && o.status != 1)
      throw ArgumentError("observation #" + std::to_string(i) + ": status must be 0 or 1");
    events_ += static_cast<std::size_t>(o.status);
  }
}

namespace {

std::vector<CensoredObservation> zip(std::span<const double> times,
                                     std::span<const int> statuses) {
  if (times.size() != statuses.size())
    throw ArgumentError("times and statuses differ in length");
  std::vector<CensoredObservation> out(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) out[i] = {times[i], statuses[i]};
  return out;
}

}  // namespace

CensoredSample::CensoredSample(std::span<const double> times, std::span<const int> statuses)
    : CensoredSample(zip(times, statuses)) {}

std::vector<double> CensoredSample::times() const {
  std::vector<double> t(obs_.size());
  std::transform(obs_.begin(), obs_.end(), t.begin(),
                 [](const CensoredObservation& o) { return o.time; });
  return t;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

namespace {

// Acklam's rational approximation to the lower-tail quantile; relative error
// about 1e-9 before refinement.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ArgumentError("normal_quantile: p must lie in (0,1)");
  if (p == 0.5) return 0.0;
  // Work in the lower tail of the smaller probability so erfc keeps full
  // relative precision, then mirror.
  const bool upper = p < 0.5;
  const double tail = upper ? p : 1.0 - p;
  double x = acklam_lower(tail);
  // Halley refinement against the lower-tail CDF.
  for (int iter = 0; iter < 2; ++iter) {
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - tail;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x = x - u / (1.0 + 0.5 * x * u);
  }
  return upper ? -x : x;
}

double two_sided_p_value(double z) {
  const double p = std::erfc(std::fabs(z) / std::sqrt(2.0));
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace unifit
