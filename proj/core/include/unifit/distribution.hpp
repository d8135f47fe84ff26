#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "unifit/random.hpp"
#include "unifit/sample.hpp"

namespace unifit {

enum class Family { kUniform, kExponential, kGamma, kWeibull, kPareto };

/// Name of the exact gamma generator, echoed in simulation reports.
inline constexpr const char* kGammaAlgorithm = "marsaglia-tsang-2000";

/// Parameter order, echoed in simulation reports.
inline constexpr const char* kParameterConventions =
    "uniform(a,b); exp(rate); gamma(shape,scale); weibull(shape,scale); "
    "pareto(scale,shape) with support [scale,inf)";

/// Lifetime distribution used by the simulation engine.
///
/// Parameter order: uniform(a, b), exponential(rate), gamma(shape, scale),
/// weibull(shape, scale), pareto(scale, shape) with support [scale, inf).
class DistributionSpec {
 public:
  static DistributionSpec uniform(double a, double b);
  static DistributionSpec exponential(double rate);
  static DistributionSpec gamma(double shape, double scale);
  static DistributionSpec weibull(double shape, double scale);
  static DistributionSpec pareto(double scale, double shape);

  /// Parses "uniform:0,1.2", "exp:1", "gamma:1,2", "weibull:1,2", "pareto:1,1".
  static DistributionSpec parse(std::string_view text);

  Family family() const noexcept { return family_; }
  double first() const noexcept { return p1_; }
  double second() const noexcept { return p2_; }

  /// Round-trips through parse().
  std::string label() const;
  /// Short name in the style of the published tables, e.g. "U(0,1.2)", "Exp(1)".
  std::string display_name() const;

  /// P(X > x).
  double survival(double x) const;
  /// Integral of the survival function over [0, c].
  double integrated_survival(double c) const;

  /// One variate; inversion for every family except gamma.
  double draw(RandomStream& stream) const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(Family family, double p1, double p2) : family_(family), p1_(p1), p2_(p2) {}

  Family family_;
  double p1_;
  double p2_;
};

/// n i.i.d. draws from `spec`.
Sample sample_dist(const DistributionSpec& spec, std::size_t n, RandomStream& stream);

/// P(X > C) for C ~ U(0, c): (1/c) * integral_0^c S_X(u) du.
double censoring_probability(const DistributionSpec& spec, double c);

/// Upper endpoint c of U(0, c) censoring such that P(X > C) = target, to 1e-8.
/// Throws CalibrationError carrying the achievable range when out of reach.
double calibrate_censoring(const DistributionSpec& spec, double target);

}  // namespace unifit
