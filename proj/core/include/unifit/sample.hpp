#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace unifit {

/// Complete-data observations. Nonempty, every value finite.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

/// Ascending copy of a Sample; X(1) <= ... <= X(n).
class OrderedSample {
 public:
  explicit OrderedSample(const Sample& sample);

  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double front() const { return values_.front(); }
  double back() const { return values_.back(); }

 private:
  std::vector<double> values_;
};

OrderedSample sort_sample(const Sample& sample);

/// Empirical distribution function, right-continuous: #{x <= t} / n.
double edf(const OrderedSample& sample, double t);

struct CensoredObservation {
  double time = 0.0;  // Y = min(X, C)
  int status = 0;     // 1 = event observed, 0 = censored
};

/// Right-censored observations in input order.
///
/// Times must be finite and >= 0, statuses 0 or 1. The requirement of at
/// least two events is checked by the estimators that need it.
class CensoredSample {
 public:
  explicit CensoredSample(std::vector<CensoredObservation> observations);
  CensoredSample(std::span<const double> times, std::span<const int> statuses);

  std::span<const CensoredObservation> observations() const noexcept { return obs_; }
  std::size_t size() const noexcept { return obs_.size(); }
  const CensoredObservation& operator[](std::size_t i) const { return obs_[i]; }
  std::size_t event_count() const noexcept { return events_; }
  std::vector<double> times() const;

 private:
  std::vector<CensoredObservation> obs_;
  std::size_t events_ = 0;
};

/// Standard normal CDF.
double normal_cdf(double z);

/// Upper percentile point: returns z with P(Z > z) = p, for 0 < p < 1.
double normal_quantile(double p);

/// Two-sided p-value 2 * P(Z > |z|), clamped to [0, 1].
double two_sided_p_value(double z);

}  // namespace unifit
