#include "unifit/simulation.hpp"

#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "unifit/censored.hpp"
#include "unifit/delta_test.hpp"
#include "unifit/errors.hpp"

namespace unifit {

Method parse_method(std::string_view label) {
  if (label == "delta") return Method::kDelta;
  if (label == "censored" || label == "delta-censored") return Method::kDeltaCensored;
  if (label == "KS" || label == "ks") return Method::kKS;
  if (label == "Frozini" || label == "frozini") return Method::kFrozini;
  if (label == "Sherman" || label == "sherman") return Method::kSherman;
  if (label == "Q" || label == "q") return Method::kQ;
  if (label == "Q-upper" || label == "q-upper") return Method::kQUpper;
  throw ArgumentError("unknown method '" + std::string(label) + "'");
}

const char* to_string(Method method) {
  switch (method) {
    case Method::kDelta:
      return "delta";
    case Method::kDeltaCensored:
      return "delta-censored";
    case Method::kKS:
      return "KS";
    case Method::kFrozini:
      return "Frozini";
    case Method::kSherman:
      return "Sherman";
    case Method::kQ:
      return "Q";
    case Method::kQUpper:
      return "Q-upper";
  }
  return "?";
}

bool is_classical(Method method) {
  return method != Method::kDelta && method != Method::kDeltaCensored;
}

ClassicalMethod to_classical(Method method) {
  switch (method) {
    case Method::kKS:
      return ClassicalMethod::kKS;
    case Method::kFrozini:
      return ClassicalMethod::kFrozini;
    case Method::kSherman:
      return ClassicalMethod::kSherman;
    case Method::kQ:
      return ClassicalMethod::kQ;
    case Method::kQUpper:
      return ClassicalMethod::kQUpper;
    default:
      throw ArgumentError(std::string(to_string(method)) + " is not a classical method");
  }
}

void SimulationConfig::validate() const {
  if (n < 2) throw ArgumentError("simulation needs n >= 2");
  if (reps == 0) throw ArgumentError("reps must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0,1)");
  if (censoring_target && !(*censoring_target > 0.0 && *censoring_target < 1.0))
    throw ArgumentError("censoring target must lie in (0,1)");
}

void attach_paper_value(PowerRow& row, double paper_value) {
  row.paper_value = paper_value;
  row.diff = row.rate - paper_value;
  const double mc_error =
      std::sqrt(paper_value * (1.0 - paper_value) / static_cast<double>(row.reps));
  row.flagged = std::fabs(*row.diff) > 2.0 * mc_error + 0.003;
}

namespace {

struct Replication {
  double value = 0.0;  // standardized statistic (delta tests) or raw statistic (classical)
  bool defined = true;
  std::size_t censored = 0;
};

}  // namespace

std::vector<PowerRow> rejection_rates(const SimulationConfig& config, Method method,
                                      std::span<const double> levels,
                                      CriticalValueCache* cache) {
  config.validate();
  for (double a : levels)
    if (!(a > 0.0 && a < 1.0)) throw ArgumentError("levels must lie in (0,1)");
  const bool censored = config.censoring_target.has_value();
  if (censored && method != Method::kDeltaCensored)
    throw UnsupportedError(std::string(to_string(method)) +
                           " has no right-censored form; only the censored delta test applies");
  if (!censored && method == Method::kDeltaCensored)
    throw UnsupportedError("the censored delta test needs a censoring target");

  const double bound = censored ? calibrate_censoring(config.dist, *config.censoring_target) : 0.0;

  std::vector<Replication> reps(config.reps);
  detail::parallel_blocks(config.reps, config.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<CensoredObservation> obs(config.n);
    for (std::size_t r = begin; r < end; ++r) {
      RandomStream stream(config.seed, StreamPurpose::kEvaluate, r);
      const Sample lifetimes = sample_dist(config.dist, config.n, stream);
      auto& out = reps[r];
      if (!censored) {
        const auto ordered = sort_sample(lifetimes);
        if (method == Method::kDelta) {
          out.value = std::sqrt(static_cast<double>(config.n) / kDeltaNullVariance) *
                      delta_orderstat(ordered);
        } else {
          try {
            out.value = classical_stat(to_classical(method), ordered);
          } catch (const DomainError&) {
            // Spacing statistics are undefined off [0,1]; such a sample is
            // as far from U(0,1) as it gets.
            out.value = std::numeric_limits<double>::infinity();
          }
        }
        continue;
      }
      for (std::size_t i = 0; i < config.n; ++i) {
        const double c = bound * stream.uniform();
        const double x = lifetimes[i];
        obs[i] = x <= c ? CensoredObservation{x, 1} : CensoredObservation{c, 0};
        out.censored += obs[i].status == 0 ? 1 : 0;
      }
      try {
        const auto eval = evaluate_censored(CensoredSample(obs));
        if (!(eval.parts.sigma2 > 0.0)) {
          out.defined = false;
        } else {
          out.value = std::sqrt(static_cast<double>(config.n)) * eval.delta /
                      std::sqrt(eval.parts.sigma2);
        }
      } catch (const SampleSizeError&) {
        out.defined = false;
      } catch (const DegenerateWeightError&) {
        out.defined = false;
      }
    }
  });

  std::size_t undefined = 0;
  std::size_t censored_total = 0;
  for (const auto& r : reps) {
    undefined += r.defined ? 0 : 1;
    censored_total += r.censored;
  }

  CriticalValueCache local;
  auto& store = cache != nullptr ? *cache : local;
  std::vector<double> null;  // computed on the first cache miss, shared by all levels

  std::vector<PowerRow> rows;
  for (double level : levels) {
    PowerRow row;
    row.dist = config.dist.display_name();
    row.method = to_string(method);
    row.n = config.n;
    row.level = level;
    row.reps = config.reps;
    row.seed = config.seed;
    row.undefined = undefined;
    if (censored) {
      row.censoring_target = config.censoring_target;
      row.censoring_bound = bound;
      row.censored_fraction = static_cast<double>(censored_total) /
                              (static_cast<double>(config.reps) * static_cast<double>(config.n));
    }

    RejectionRule rule = RejectionRule::kTwoSidedNormal;
    double upper = normal_quantile(level / 2.0);
    std::optional<double> lower;
    if (is_classical(method)) {
      const auto cm = to_classical(method);
      auto cv = store.find(to_string(cm), config.n, level, config.reps, config.seed);
      if (!cv) {
        if (null.empty())
          null = null_distribution(cm, config.n, config.reps, config.seed, config.workers);
        cv = critical_values_from(cm, config.n, level, config.seed, null);
        store.insert(*cv);
      }
      rule = rejection_rule(cm);
      upper = cv->value;
      lower = cv->lower_value;
    }
    for (const auto& r : reps)
      if (r.defined && decide(rule, r.value, upper, lower)) ++row.rejections;
    row.rate = static_cast<double>(row.rejections) / static_cast<double>(row.reps);
    rows.push_back(std::move(row));
  }
  return rows;
}

PowerRow rejection_rate(const SimulationConfig& config, Method method, CriticalValueCache* cache) {
  const double level[] = {config.alpha};
  return rejection_rates(config, method, level, cache).front();
}

}  // namespace unifit
