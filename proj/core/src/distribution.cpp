#include "unifit/distribution.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include <charconv>
#include <cmath>
#include <sstream>
#include <vector>

#include "unifit/errors.hpp"

namespace unifit {

namespace {

void require_positive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0))
    throw ArgumentError(std::string(what) + " must be finite and > 0");
}

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_number(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ArgumentError("bad distribution parameter '" + std::string(s) + "'");
  return v;
}

}  // namespace

DistributionSpec DistributionSpec::uniform(double a, double b) {
  if (!(std::isfinite(a) && std::isfinite(b) && a < b))
    throw ArgumentError("uniform(a,b) needs finite a < b");
  return {Family::kUniform, a, b};
}

DistributionSpec DistributionSpec::exponential(double rate) {
  require_positive(rate, "exponential rate");
  return {Family::kExponential, rate, 0.0};
}

DistributionSpec DistributionSpec::gamma(double shape, double scale) {
  require_positive(shape, "gamma shape");
  require_positive(scale, "gamma scale");
  return {Family::kGamma, shape, scale};
}

DistributionSpec DistributionSpec::weibull(double shape, double scale) {
  require_positive(shape, "weibull shape");
  require_positive(scale, "weibull scale");
  return {Family::kWeibull, shape, scale};
}

DistributionSpec DistributionSpec::pareto(double scale, double shape) {
  require_positive(scale, "pareto scale");
  require_positive(shape, "pareto shape");
  return {Family::kPareto, scale, shape};
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw ArgumentError("distribution must look like family:p1[,p2], got '" + std::string(text) +
                        "'");
  const auto name = text.substr(0, colon);
  std::vector<double> params;
  auto rest = text.substr(colon + 1);
  while (true) {
    const auto comma = rest.find(',');
    params.push_back(parse_number(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  auto need = [&](std::size_t k) {
    if (params.size() != k)
      throw ArgumentError("distribution '" + std::string(name) + "' takes " + std::to_string(k) +
                          " parameter(s)");
  };
  if (name == "uniform" || name == "unif") {
    need(2);
    return uniform(params[0], params[1]);
  }
  if (name == "exp" || name == "exponential") {
    need(1);
    return exponential(params[0]);
  }
  if (name == "gamma") {
    need(2);
    return gamma(params[0], params[1]);
  }
  if (name == "weibull") {
    need(2);
    return weibull(params[0], params[1]);
  }
  if (name == "pareto") {
    need(2);
    return pareto(params[0], params[1]);
  }
  throw ArgumentError("unknown distribution family '" + std::string(name) + "'");
}

std::string DistributionSpec::label() const {
  switch (family_) {
    case Family::kUniform:
      return "uniform:" + format_number(p1_) + "," + format_number(p2_);
    case Family::kExponential:
      return "exp:" + format_number(p1_);
    case Family::kGamma:
      return "gamma:" + format_number(p1_) + "," + format_number(p2_);
    case Family::kWeibull:
      return "weibull:" + format_number(p1_) + "," + format_number(p2_);
    case Family::kPareto:
      return "pareto:" + format_number(p1_) + "," + format_number(p2_);
  }
  return {};
}

std::string DistributionSpec::display_name() const {
  const auto pair = "(" + format_number(p1_) + "," + format_number(p2_) + ")";
  switch (family_) {
    case Family::kUniform:
      return "U" + pair;
    case Family::kExponential:
      return "Exp(" + format_number(p1_) + ")";
    case Family::kGamma:
      return "Gamma" + pair;
    case Family::kWeibull:
      return "Weibull" + pair;
    case Family::kPareto:
      return "Pareto" + pair;
  }
  return {};
}

double DistributionSpec::survival(double x) const {
  switch (family_) {
    case Family::kUniform:
      if (x < p1_) return 1.0;
      if (x >= p2_) return 0.0;
      return (p2_ - x) / (p2_ - p1_);
    case Family::kExponential:
      return x <= 0.0 ? 1.0 : std::exp(-p1_ * x);
    case Family::kGamma:
      return x <= 0.0 ? 1.0 : boost::math::gamma_q(p1_, x / p2_);
    case Family::kWeibull:
      return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / p2_, p1_));
    case Family::kPareto:
      return x <= p1_ ? 1.0 : std::pow(p1_ / x, p2_);
  }
  return 0.0;
}

double DistributionSpec::integrated_survival(double c) const {
  if (c <= 0.0) return 0.0;
  switch (family_) {
    case Family::kUniform: {
      const double a = p1_, b = p2_;
      double total = 0.0;
      const double flat_end = std::min(c, std::max(a, 0.0));
      total += flat_end;
      const double lo = std::max(a, 0.0);
      const double hi = std::min(c, b);
      if (hi > lo) total += ((b - lo) * (b - lo) - (b - hi) * (b - hi)) / (2.0 * (b - a));
      return total;
    }
    case Family::kExponential:
      return -std::expm1(-p1_ * c) / p1_;
    case Family::kPareto: {
      const double s = p1_, shape = p2_;
      if (c <= s) return c;
      const double r = c / s;
      if (shape == 1.0) return s + s * std::log(r);
      return s + s * (std::pow(r, 1.0 - shape) - 1.0) / (1.0 - shape);
    }
    case Family::kGamma:
    case Family::kWeibull: {
      auto f = [this](double u) { return survival(u); };
      double error = 0.0;
      return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, c, 20, 1e-14,
                                                                            &error);
    }
  }
  return 0.0;
}

namespace {

// Marsaglia & Tsang (2000), "A simple method for generating gamma variables".
double gamma_variate(double shape, RandomStream& stream) {
  if (shape < 1.0) {
    const double g = gamma_variate(shape + 1.0, stream);
    return g * std::pow(stream.open_uniform(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  while (true) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.open_uniform();
    if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double DistributionSpec::draw(RandomStream& stream) const {
  switch (family_) {
    case Family::kUniform:
      return p1_ + (p2_ - p1_) * stream.uniform();
    case Family::kExponential:
      return -std::log1p(-stream.uniform()) / p1_;
    case Family::kGamma:
      return p2_ * gamma_variate(p1_, stream);
    case Family::kWeibull:
      return p2_ * std::pow(-std::log1p(-stream.uniform()), 1.0 / p1_);
    case Family::kPareto:
      return p1_ * std::pow(1.0 - stream.uniform(), -1.0 / p2_);
  }
  return 0.0;
}

Sample sample_dist(const DistributionSpec& spec, std::size_t n, RandomStream& stream) {
  if (n == 0) throw SampleSizeError("sample size must be positive");
  std::vector<double> v(n);
  for (auto& x : v) x = spec.draw(stream);
  return Sample(std::move(v));
}

double censoring_probability(const DistributionSpec& spec, double c) {
  if (!(c > 0.0 && std::isfinite(c))) throw ArgumentError("censoring bound c must be > 0");
  return spec.integrated_survival(c) / c;
}

double calibrate_censoring(const DistributionSpec& spec, double target) {
  // As c -> 0 the probability tends to S(0); as c -> inf it tends to 0.
  const double highest = spec.survival(0.0);
  const auto unattainable = [&] {
    std::ostringstream msg;
    msg << "censoring target " << target << " is not attainable for " << spec.display_name()
        << "; achievable P(X > C) lies in (0, " << highest << ")";
    return CalibrationError(msg.str(), 0.0, highest);
  };
  if (!(target > 0.0 && target < highest)) throw unattainable();

  auto f = [&](double c) { return censoring_probability(spec, c) - target; };
  double lo = 1.0;
  double hi = 1.0;
  while (f(lo) <= 0.0) {
    lo *= 0.5;
    if (lo < 1e-300) throw unattainable();
  }
  while (f(hi) >= 0.0) {
    hi *= 2.0;
    if (hi > 1e300) throw unattainable();
  }
  std::uintmax_t iterations = 200;
  const auto bracket = boost::math::tools::toms748_solve(
      f, lo, hi, f(lo), f(hi), boost::math::tools::eps_tolerance<double>(52), iterations);
  const double c = 0.5 * (bracket.first + bracket.second);
  if (std::fabs(f(c)) > 1e-8) throw unattainable();
  return c;
}

}  // namespace unifit
