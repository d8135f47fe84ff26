#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "unifit/sample.hpp"
#include "unifit/test_result.hpp"

namespace unifit {

/// Reverse Kaplan-Meier estimate of the censoring survival K_c(t) = P(C > t).
///
/// Right-continuous step function: 1 before the first jump, survival_values[k]
/// on [jump_times[k], jump_times[k+1]).
class KaplanMeierCurve {
 public:
  /// Validates: jump times strictly ascending, values in [0,1] and nonincreasing.
  KaplanMeierCurve(std::vector<double> jump_times, std::vector<double> survival_values,
                   std::size_t n_at_construction);

  std::span<const double> jump_times() const noexcept { return times_; }
  std::span<const double> survival_values() const noexcept { return values_; }
  std::size_t n_at_construction() const noexcept { return n_; }

  /// K(t), or the left limit K(t-) (product over jumps strictly before t).
  double at(double t, bool left_limit = false) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  std::size_t n_;
};

/// Product-limit estimator with censorings (status 0) as the events. At a
/// time t with d censorings the curve is multiplied by 1 - d/r, where
/// r = #{Y_j >= t}; a failure tied with a censoring is still at risk for it.
KaplanMeierCurve censoring_km(const CensoredSample& sample);

double km_at(const KaplanMeierCurve& curve, double t, bool left_limit);

/// Which value of K-hat enters the inverse-probability weights.
enum class WeightConvention {
  kLeftLimit,        // K(Y-): default
  kRightContinuous,  // K(Y)
};

/// Per-observation inverse-probability-of-censoring weights delta_i / K(Y_i).
struct IpcwWeights {
  std::vector<int> status;
  std::vector<double> survival;  // K at Y_i under the chosen convention
  std::vector<double> weight;    // 0 for censored observations
  std::vector<bool> usable;      // false exactly when status == 1 and survival == 0
};

IpcwWeights ipcw_weights(const CensoredSample& sample, const KaplanMeierCurve& curve,
                         WeightConvention convention = WeightConvention::kLeftLimit);

/// Residual term of V_i.
enum class VarianceFormula {
  /// w(Y_i)(1 - d_i) - sum_j w(Y_j) I(Y_i >= Y_j)(1 - d_j) / #{k: Y_k >= Y_j}:
  /// the censoring-martingale integral with w evaluated at the censoring times.
  kCorrected,
  /// w(Y_i)(1 - d_i) - sum_j w(Y_i) I(Y_i > Y_j)(1 - d_i) / #{k: Y_k > Y_j},
  /// transcribed as printed; kept for side-by-side comparison.
  kPaperLiteral,
};

struct CensoredOptions {
  WeightConvention weights = WeightConvention::kLeftLimit;
  VarianceFormula variance = VarianceFormula::kCorrected;
};

/// IPCW U-statistic
///   2/(n(n-1)) sum_{i<j} h(Y_i, Y_j) d_i d_j / (K(Y_i) K(Y_j)).
/// Needs two or more events; throws DegenerateWeightError when an event has
/// zero censoring survival.
double delta_c(const CensoredSample& sample, WeightConvention convention = WeightConvention::kLeftLimit);

/// (1/n) sum_i h(t, Y_i) d_i / K(Y_i-).
double h1_hat(double t, const CensoredSample& sample, const KaplanMeierCurve& curve,
              WeightConvention convention = WeightConvention::kLeftLimit);

/// (1/(n R(t))) sum_i h1_hat(Y_i) d_i I(Y_i > t) / K(Y_i-), R(t) = #{Y_i > t}/n;
/// 0 when no observation exceeds t.
double w_hat(double t, const CensoredSample& sample, const KaplanMeierCurve& curve,
             WeightConvention convention = WeightConvention::kLeftLimit);

struct CensoredVarianceParts {
  std::vector<double> h1;  // h1_hat(Y_i)
  std::vector<double> w;   // w_hat(Y_i)
  std::vector<double> v;   // V_i
  double v_bar = 0.0;
  double sigma2 = 0.0;     // 4/(n-1) sum (V_i - v_bar)^2
};

/// Everything the censored test needs from one sample.
struct CensoredEvaluation {
  double delta = 0.0;
  CensoredVarianceParts parts;
  IpcwWeights weights;
};

/// Single O(n^2) pass computing delta_c and the variance pieces together.
CensoredEvaluation evaluate_censored(const CensoredSample& sample, const CensoredOptions& options = {});

CensoredVarianceParts censored_variance(const CensoredSample& sample,
                                        const CensoredOptions& options = {});

/// Null variance estimate sigma-hat^2_c0 = 4/(n-1) sum (V_i - V-bar)^2.
double sigma2_c0_hat(const CensoredSample& sample, const CensoredOptions& options = {});

/// Right-censored uniformity test: reject when
/// sqrt(n) |delta_c| / sigma-hat_c0 > z_{alpha/2}.
TestResult censored_test(const CensoredSample& sample, double alpha,
                         const CensoredOptions& options = {});

}  // namespace unifit
