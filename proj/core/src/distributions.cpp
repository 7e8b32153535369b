#include "vsgof/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "vsgof/error.hpp"
#include "vsgof/special_math.hpp"

namespace vsgof {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogSqrt2Pi = 0.91893853320467274178032973640562;

// Default delta: 1/12 for uniform, normal, lognormal, exponential, gamma,
// pareto and laplace; 2/15 for weibull, fisher and beta.
constexpr std::array<FamilySpec, 10> kSpecs = {{
    {Family::uniform, "uniform", "dunif", "uniform", 2, {"Min", "Max"}, 1.0 / 12},
    {Family::normal, "normal", "dnorm", "normal", 2, {"Mean", "St. dev."}, 1.0 / 12},
    {Family::lognormal, "lognormal", "dlnorm", "log-normal", 2, {"Location", "Scale"}, 1.0 / 12},
    {Family::exponential, "exponential", "dexp", "exponential", 1, {"Rate", ""}, 1.0 / 12},
    {Family::gamma, "gamma", "dgamma", "gamma", 2, {"Shape", "Rate"}, 1.0 / 12},
    {Family::weibull, "weibull", "dweibull", "Weibull", 2, {"Shape", "Scale"}, 2.0 / 15},
    {Family::pareto, "pareto", "dpareto", "Pareto", 2, {"mu", "c"}, 1.0 / 12},
    {Family::fisher, "fisher", "df", "Fisher", 2, {"df1", "df2"}, 2.0 / 15},
    {Family::laplace, "laplace", "dlaplace", "Laplace", 2, {"Location", "Scale"}, 1.0 / 12},
    {Family::beta, "beta", "dbeta", "beta", 2, {"Shape1", "Shape2"}, 2.0 / 15},
}};

[[noreturn]] void invalid_params(Family family, const std::string& detail) {
  throw ParameterError("invalid parameter (not consistent with the specified distribution): " +
                       std::string(family_spec(family).name) + ", " + detail);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

// Safeguarded Newton/bisection inversion of a continuous increasing CDF on
// [lo, hi], where cdf(lo) <= q <= cdf(hi).
double invert_cdf(const Distribution& dist, double q, double lo, double hi) {
  double x = 0.5 * (lo + hi);
  for (int iter = 0; iter < 400; ++iter) {
    const double f = dist.cdf(x) - q;
    if (f == 0.0) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double pdf = dist.density(x);
    double next = (pdf > 0.0 && std::isfinite(pdf)) ? x - f / pdf : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 1e-15 * std::max(1.0, std::abs(x)) ||
        hi - lo <= 1e-15 * std::max(1.0, std::abs(hi))) {
      return next;
    }
    x = next;
  }
  return x;
}

// Upper end of a bracket for numeric quantiles on (0, inf).
double grow_upper_bracket(const Distribution& dist, double q, double start) {
  double hi = std::max(start, 1e-8);
  for (int i = 0; i < 2000 && dist.cdf(hi) < q; ++i) {
    hi *= 2.0;
  }
  return hi;
}

}  // namespace

const FamilySpec& family_spec(Family family) {
  return kSpecs.at(static_cast<std::size_t>(family));
}

std::optional<Family> family_from_name(std::string_view name) {
  for (const auto& spec : kSpecs) {
    if (name == spec.call || name == spec.name) return spec.id;
  }
  return std::nullopt;
}

Params::Params(std::initializer_list<double> values) : Params(std::span<const double>(values.begin(), values.size())) {}

Params::Params(std::span<const double> values) : size_(values.size()) {
  if (values.size() > values_.size()) {
    throw ParameterError("at most two parameters are supported, got " +
                         std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), values_.begin());
}

void validate_params(Family family, const Params& p) {
  const auto& spec = family_spec(family);
  if (p.size() != spec.param_count) {
    invalid_params(family, "expected " + std::to_string(spec.param_count) + " value(s), got " +
                               std::to_string(p.size()));
  }
  for (double v : p.values()) {
    if (!std::isfinite(v)) invalid_params(family, "parameters must be finite");
  }
  switch (family) {
    case Family::uniform:
      if (!(p[0] < p[1])) invalid_params(family, "requires a < b");
      break;
    case Family::normal:
    case Family::lognormal:
    case Family::laplace:
      if (!positive(p[1])) invalid_params(family, "scale must be > 0");
      break;
    case Family::exponential:
      if (!positive(p[0])) invalid_params(family, "rate must be > 0");
      break;
    case Family::gamma:
    case Family::weibull:
    case Family::pareto:
    case Family::fisher:
    case Family::beta:
      if (!positive(p[0]) || !positive(p[1])) invalid_params(family, "both parameters must be > 0");
      break;
  }
}

Distribution::Distribution(Family family, Params params)
    : family_(family), params_(params) {
  validate_params(family_, params_);
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      log_norm_ = -std::log(p[1] - p[0]);
      break;
    case Family::normal:
    case Family::lognormal:
      log_norm_ = -std::log(p[1]) - kLogSqrt2Pi;
      break;
    case Family::exponential:
      log_norm_ = std::log(p[0]);
      break;
    case Family::gamma:
      log_norm_ = p[0] * std::log(p[1]) - special::log_gamma(p[0]);
      break;
    case Family::weibull:
      log_norm_ = std::log(p[0]) - p[0] * std::log(p[1]);
      break;
    case Family::pareto:
      log_norm_ = std::log(p[0]) + p[0] * std::log(p[1]);
      break;
    case Family::fisher:
      log_norm_ = 0.5 * p[0] * std::log(p[0]) + 0.5 * p[1] * std::log(p[1]) -
                  special::log_beta(0.5 * p[0], 0.5 * p[1]);
      break;
    case Family::laplace:
      log_norm_ = -std::log(2.0 * p[1]);
      break;
    case Family::beta:
      log_norm_ = -special::log_beta(p[0], p[1]);
      break;
  }
}

double Distribution::support_lower() const noexcept {
  switch (family_) {
    case Family::uniform:
      return params_[0];
    case Family::normal:
    case Family::laplace:
      return kNegInf;
    case Family::pareto:
      return params_[1];
    default:
      return 0.0;
  }
}

double Distribution::support_upper() const noexcept {
  switch (family_) {
    case Family::uniform:
      return params_[1];
    case Family::beta:
      return 1.0;
    default:
      return kInf;
  }
}

bool Distribution::in_support(double x) const noexcept {
  if (!std::isfinite(x)) return false;
  switch (family_) {
    case Family::uniform:
      return x >= params_[0] && x <= params_[1];
    case Family::normal:
    case Family::laplace:
      return true;
    case Family::exponential:
      return x >= 0.0;
    case Family::pareto:
      return x >= params_[1];
    case Family::beta:
      return x > 0.0 && x < 1.0;
    case Family::lognormal:
    case Family::gamma:
    case Family::weibull:
    case Family::fisher:
      return x > 0.0;
  }
  return false;
}

double Distribution::log_density(double x) const noexcept {
  if (!in_support(x)) return kNegInf;
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      return log_norm_;
    case Family::normal: {
      const double z = (x - p[0]) / p[1];
      return log_norm_ - 0.5 * z * z;
    }
    case Family::lognormal: {
      const double lx = std::log(x);
      const double z = (lx - p[0]) / p[1];
      return log_norm_ - lx - 0.5 * z * z;
    }
    case Family::exponential:
      return log_norm_ - p[0] * x;
    case Family::gamma:
      return log_norm_ + (p[0] - 1.0) * std::log(x) - p[1] * x;
    case Family::weibull:
      return log_norm_ + (p[0] - 1.0) * std::log(x) - std::pow(x / p[1], p[0]);
    case Family::pareto:
      return log_norm_ - (p[0] + 1.0) * std::log(x);
    case Family::fisher:
      return log_norm_ + (0.5 * p[0] - 1.0) * std::log(x) -
             0.5 * (p[0] + p[1]) * std::log(p[0] * x + p[1]);
    case Family::laplace:
      return log_norm_ - std::abs(x - p[0]) / p[1];
    case Family::beta:
      return log_norm_ + (p[0] - 1.0) * std::log(x) + (p[1] - 1.0) * std::log1p(-x);
  }
  return kNegInf;
}

double Distribution::density(double x) const noexcept { return std::exp(log_density(x)); }

double Distribution::cdf(double x) const {
  if (std::isnan(x)) throw DomainError("cdf: argument is NaN");
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      return std::clamp((x - p[0]) / (p[1] - p[0]), 0.0, 1.0);
    case Family::normal:
      return special::std_normal_cdf((x - p[0]) / p[1]);
    case Family::lognormal:
      return x <= 0.0 ? 0.0 : special::std_normal_cdf((std::log(x) - p[0]) / p[1]);
    case Family::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p[0] * x);
    case Family::gamma:
      return x <= 0.0 ? 0.0 : special::regularized_gamma_p(p[0], p[1] * x);
    case Family::weibull:
      return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p[1], p[0]));
    case Family::pareto:
      return x <= p[1] ? 0.0 : -std::expm1(p[0] * std::log(p[1] / x));
    case Family::fisher: {
      if (x <= 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      const double t = p[0] * x / (p[0] * x + p[1]);
      return special::regularized_beta(0.5 * p[0], 0.5 * p[1], t);
    }
    case Family::laplace: {
      const double z = (x - p[0]) / p[1];
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case Family::beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return special::regularized_beta(p[0], p[1], x);
  }
  return 0.0;
}

double Distribution::quantile(double q) const {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw DomainError("quantile: probability must lie in [0, 1], got " + std::to_string(q));
  }
  if (q == 0.0) return support_lower();
  if (q == 1.0) return support_upper();
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      return p[0] + q * (p[1] - p[0]);
    case Family::normal:
      return p[0] + p[1] * special::std_normal_quantile(q);
    case Family::lognormal:
      return std::exp(p[0] + p[1] * special::std_normal_quantile(q));
    case Family::exponential:
      return -std::log1p(-q) / p[0];
    case Family::weibull:
      return p[1] * std::pow(-std::log1p(-q), 1.0 / p[0]);
    case Family::pareto:
      return p[1] * std::exp(-std::log1p(-q) / p[0]);
    case Family::laplace:
      return q < 0.5 ? p[0] + p[1] * std::log(2.0 * q) : p[0] - p[1] * std::log(2.0 * (1.0 - q));
    case Family::gamma:
      return invert_cdf(*this, q, 0.0, grow_upper_bracket(*this, q, p[0] / p[1]));
    case Family::fisher:
      return invert_cdf(*this, q, 0.0, grow_upper_bracket(*this, q, 1.0));
    case Family::beta:
      return invert_cdf(*this, q, 0.0, 1.0);
  }
  return 0.0;
}

void Distribution::sample(Rng& rng, std::span<double> out) const {
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      for (double& v : out) v = p[0] + (p[1] - p[0]) * rng.uniform();
      break;
    case Family::normal:
      for (double& v : out) v = p[0] + p[1] * rng.normal();
      break;
    case Family::lognormal:
      for (double& v : out) v = std::exp(p[0] + p[1] * rng.normal());
      break;
    case Family::exponential:
      for (double& v : out) v = rng.exponential() / p[0];
      break;
    case Family::gamma:
      for (double& v : out) v = rng.gamma(p[0]) / p[1];
      break;
    case Family::weibull:
      for (double& v : out) v = p[1] * std::pow(rng.exponential(), 1.0 / p[0]);
      break;
    case Family::pareto:
      // c * U^(-1/mu)
      for (double& v : out) v = p[1] * std::exp(rng.exponential() / p[0]);
      break;
    case Family::fisher:
      for (double& v : out) {
        const double num = 2.0 * rng.gamma(0.5 * p[0]) / p[0];
        const double den = 2.0 * rng.gamma(0.5 * p[1]) / p[1];
        v = num / den;
      }
      break;
    case Family::laplace:
      for (double& v : out) {
        const double e = rng.exponential();
        v = rng.bit() ? p[0] + p[1] * e : p[0] - p[1] * e;
      }
      break;
    case Family::beta:
      for (double& v : out) {
        const double g1 = rng.gamma(p[0]);
        const double g2 = rng.gamma(p[1]);
        v = g1 / (g1 + g2);
      }
      break;
  }
}

std::vector<double> Distribution::sample(Rng& rng, std::size_t n) const {
  std::vector<double> out(n);
  sample(rng, out);
  return out;
}

double Distribution::entropy() const {
  const Params& p = params_;
  switch (family_) {
    case Family::uniform:
      return std::log(p[1] - p[0]);
    case Family::normal:
      return std::log(p[1] * std::sqrt(2.0 * std::numbers::pi * std::numbers::e));
    case Family::lognormal:
      return p[0] + 0.5 + std::log(p[1]) + kLogSqrt2Pi;
    case Family::exponential:
      return 1.0 - std::log(p[0]);
    case Family::gamma:
      return p[0] - std::log(p[1]) + special::log_gamma(p[0]) +
             (1.0 - p[0]) * special::digamma(p[0]);
    case Family::weibull:
      return special::kEulerGamma * (1.0 - 1.0 / p[0]) + std::log(p[1] / p[0]) + 1.0;
    case Family::pareto:
      return -std::log(p[0]) + std::log(p[1]) + 1.0 / p[0] + 1.0;
    case Family::laplace:
      return 1.0 + std::log(2.0 * p[1]);
    case Family::beta:
      return special::log_beta(p[0], p[1]) - (p[0] - 1.0) * special::digamma(p[0]) -
             (p[1] - 1.0) * special::digamma(p[1]) +
             (p[0] + p[1] - 2.0) * special::digamma(p[0] + p[1]);
    case Family::fisher:
      break;
  }
  throw CapabilityError("no closed-form entropy for the " +
                        std::string(family_spec(family_).name) + " family");
}

double log_density(Family family, const Params& params, double x) {
  return Distribution(family, params).log_density(x);
}

double cdf(Family family, const Params& params, double x) {
  return Distribution(family, params).cdf(x);
}

double quantile(Family family, const Params& params, double q) {
  return Distribution(family, params).quantile(q);
}

std::vector<double> sample(Family family, const Params& params, std::size_t n, Rng& rng) {
  return Distribution(family, params).sample(rng, n);
}

double closed_form_entropy(Family family, const Params& params) {
  return Distribution(family, params).entropy();
}

double mean_log_likelihood(const Distribution& dist, std::span<const double> x) {
  double sum = 0.0;
  for (double v : x) sum += dist.log_density(v);
  return sum / static_cast<double>(x.size());
}

}  // namespace vsgof
