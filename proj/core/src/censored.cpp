#include "unifit/censored.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "unifit/delta_test.hpp"
#include "unifit/errors.hpp"

namespace unifit {

KaplanMeierCurve::KaplanMeierCurve(std::vector<double> jump_times,
                                   std::vector<double> survival_values,
                                   std::size_t n_at_construction)
    : times_(std::move(jump_times)), values_(std::move(survival_values)), n_(n_at_construction) {
  if (times_.size() != values_.size())
    throw ArgumentError("Kaplan-Meier curve: jump times and values differ in length");
  double previous = 1.0;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || (k > 0 && !(times_[k] > times_[k - 1])))
      throw ArgumentError("Kaplan-Meier curve: jump times must be finite and strictly ascending");
    if (!(values_[k] >= 0.0 && values_[k] <= previous))
      throw ArgumentError("Kaplan-Meier curve: values must lie in [0,1] and not increase");
    previous = values_[k];
  }
}

double KaplanMeierCurve::at(double t, bool left_limit) const {
  const auto it = left_limit ? std::lower_bound(times_.begin(), times_.end(), t)
                             : std::upper_bound(times_.begin(), times_.end(), t);
  const auto jumps = static_cast<std::size_t>(it - times_.begin());
  return jumps == 0 ? 1.0 : values_[jumps - 1];
}

double km_at(const KaplanMeierCurve& curve, double t, bool left_limit) {
  return curve.at(t, left_limit);
}

namespace {

std::vector<std::size_t> time_order(const CensoredSample& s) {
  std::vector<std::size_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return s[a].time < s[b].time; });
  return idx;
}

void require_events(const CensoredSample& s) {
  if (s.event_count() < 2)
    throw SampleSizeError("censored estimator needs at least two uncensored observations, got " +
                          std::to_string(s.event_count()));
}

void require_usable(const CensoredSample& s, const IpcwWeights& w) {
  for (std::size_t i = 0; i < w.usable.size(); ++i)
    if (!w.usable[i]) throw DegenerateWeightError(i, s[i].time);
}

}  // namespace

KaplanMeierCurve censoring_km(const CensoredSample& s) {
  const auto idx = time_order(s);
  const std::size_t n = s.size();
  std::vector<double> times;
  std::vector<double> values;
  double survival = 1.0;
  std::size_t k = 0;
  while (k < n) {
    const double t = s[idx[k]].time;
    const std::size_t at_risk = n - k;
    std::size_t censored = 0;
    while (k < n && s[idx[k]].time == t) {
      censored += s[idx[k]].status == 0 ? 1 : 0;
      ++k;
    }
    if (censored > 0) {
      survival *= 1.0 - static_cast<double>(censored) / static_cast<double>(at_risk);
      times.push_back(t);
      values.push_back(survival);
    }
  }
  return KaplanMeierCurve(std::move(times), std::move(values), n);
}

IpcwWeights ipcw_weights(const CensoredSample& s, const KaplanMeierCurve& curve,
                         WeightConvention convention) {
  const std::size_t n = s.size();
  const bool left = convention == WeightConvention::kLeftLimit;
  IpcwWeights w;
  w.status.resize(n);
  w.survival.resize(n);
  w.weight.resize(n);
  w.usable.assign(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    w.status[i] = s[i].status;
    w.survival[i] = curve.at(s[i].time, left);
    if (s[i].status == 0) {
      w.weight[i] = 0.0;
    } else if (w.survival[i] > 0.0) {
      w.weight[i] = 1.0 / w.survival[i];
    } else {
      w.weight[i] = std::numeric_limits<double>::infinity();
      w.usable[i] = false;
    }
  }
  return w;
}

double delta_c(const CensoredSample& s, WeightConvention convention) {
  require_events(s);
  const auto w = ipcw_weights(s, censoring_km(s), convention);
  require_usable(s, w);
  const std::size_t n = s.size();
  double sum = 0.0;
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      sum += delta_kernel(s[i].time, s[j].time) * w.weight[i] * w.weight[j];
  const double nd = static_cast<double>(n);
  return 2.0 * sum / (nd * (nd - 1.0));
}

double h1_hat(double t, const CensoredSample& s, const KaplanMeierCurve& curve,
              WeightConvention convention) {
  const auto w = ipcw_weights(s, curve, convention);
  require_usable(s, w);
  double sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (w.status[i] == 1) sum += delta_kernel(t, s[i].time) * w.weight[i];
  return sum / static_cast<double>(s.size());
}

double w_hat(double t, const CensoredSample& s, const KaplanMeierCurve& curve,
             WeightConvention convention) {
  const auto w = ipcw_weights(s, curve, convention);
  require_usable(s, w);
  double sum = 0.0;
  std::size_t beyond = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i].time > t)) continue;
    ++beyond;
    if (w.status[i] == 1) sum += h1_hat(s[i].time, s, curve, convention) * w.weight[i];
  }
  return beyond == 0 ? 0.0 : sum / static_cast<double>(beyond);
}

CensoredEvaluation evaluate_censored(const CensoredSample& s, const CensoredOptions& options) {
  require_events(s);
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  CensoredEvaluation out;
  out.weights = ipcw_weights(s, censoring_km(s), options.weights);
  require_usable(s, out.weights);
  const auto& wt = out.weights.weight;

  // Kernel row sums sum_j h(Y_i, Y_j) w_j and the pair sum of delta_c, in
  // one sweep over i > j (same order as delta_ustat).
  std::vector<double> row(n, 0.0);
  double pair_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double yi = s[i].time;
    row[i] += delta_kernel(yi, yi) * wt[i];
    for (std::size_t j = 0; j < i; ++j) {
      const double h = delta_kernel(yi, s[j].time);
      pair_sum += h * wt[i] * wt[j];
      row[i] += h * wt[j];
      row[j] += h * wt[i];
    }
  }
  out.delta = 2.0 * pair_sum / (nd * (nd - 1.0));

  auto& parts = out.parts;
  parts.h1.resize(n);
  std::vector<double> weighted(n);  // h1_hat(Y_i) d_i / K(Y_i)
  for (std::size_t i = 0; i < n; ++i) {
    parts.h1[i] = row[i] / nd;
    weighted[i] = parts.h1[i] * wt[i];
  }

  const auto idx = time_order(s);
  // Tie groups [start, end) of equal times in ascending order.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t k = 0; k < n;) {
    std::size_t e = k;
    while (e < n && s[idx[e]].time == s[idx[k]].time) ++e;
    groups.emplace_back(k, e);
    k = e;
  }

  // w_hat(Y) averages `weighted` over observations strictly later than Y.
  parts.w.assign(n, 0.0);
  {
    double later_sum = 0.0;
    std::size_t later_count = 0;
    for (auto g = groups.rbegin(); g != groups.rend(); ++g) {
      const double value = later_count == 0 ? 0.0 : later_sum / static_cast<double>(later_count);
      for (std::size_t k = g->first; k < g->second; ++k) parts.w[idx[k]] = value;
      for (std::size_t k = g->first; k < g->second; ++k) later_sum += weighted[idx[k]];
      later_count += g->second - g->first;
    }
  }

  std::vector<double> residual(n, 0.0);
  if (options.variance == VarianceFormula::kCorrected) {
    // Compensator: sum over censorings at or before Y_i of w_hat(Y_j) / #at-risk(Y_j).
    double compensator = 0.0;
    for (const auto& [start, end] : groups) {
      const double at_risk = static_cast<double>(n - start);
      for (std::size_t k = start; k < end; ++k)
        if (s[idx[k]].status == 0) compensator += parts.w[idx[k]] / at_risk;
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = idx[k];
        residual[i] = parts.w[i] * (1 - s[i].status) - compensator;
      }
    }
  } else {
    // Printed form: w(Y_i)(1 - d_i) * (1 - sum_{Y_j < Y_i} 1/#{k: Y_k > Y_j}).
    double earlier = 0.0;
    for (const auto& [start, end] : groups) {
      for (std::size_t k = start; k < end; ++k) {
        const std::size_t i = idx[k];
        residual[i] = parts.w[i] * (1 - s[i].status) * (1.0 - earlier);
      }
      const double later = static_cast<double>(n - end);
      if (later > 0.0) earlier += static_cast<double>(end - start) / later;
    }
  }

  parts.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) parts.v[i] = weighted[i] + residual[i];
  parts.v_bar = std::accumulate(parts.v.begin(), parts.v.end(), 0.0) / nd;
  double ss = 0.0;
  for (double v : parts.v) ss += (v - parts.v_bar) * (v - parts.v_bar);
  parts.sigma2 = 4.0 * ss / (nd - 1.0);
  return out;
}

CensoredVarianceParts censored_variance(const CensoredSample& s, const CensoredOptions& options) {
  return evaluate_censored(s, options).parts;
}

double sigma2_c0_hat(const CensoredSample& s, const CensoredOptions& options) {
  return censored_variance(s, options).sigma2;
}

TestResult censored_test(const CensoredSample& s, double alpha, const CensoredOptions& options) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  const auto eval = evaluate_censored(s, options);
  if (!(eval.parts.sigma2 > 0.0))
    throw DegenerateDataError("estimated null variance of the censored statistic is zero");
  TestResult r;
  r.method = "delta-censored";
  r.alpha = alpha;
  r.rule = RejectionRule::kTwoSidedNormal;
  r.statistic = eval.delta;
  r.standardized = std::sqrt(static_cast<double>(s.size())) * eval.delta / std::sqrt(eval.parts.sigma2);
  r.critical_value = normal_quantile(alpha / 2.0);
  r.p_value = two_sided_p_value(r.standardized);
  r.reject = decide(r.rule, r.standardized, r.critical_value);
  return r;
}

}  // namespace unifit
