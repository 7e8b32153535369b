#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vsgof/rng.hpp"
#include "vsgof/sample.hpp"

namespace vsgof {

/// The ten null-hypothesis families.
enum class Family {
  uniform,
  normal,
  lognormal,
  exponential,
  gamma,
  weibull,
  pareto,
  fisher,
  laplace,
  beta,
};

inline constexpr std::array<Family, 10> kAllFamilies = {
    Family::uniform, Family::normal,  Family::lognormal, Family::exponential,
    Family::gamma,   Family::weibull, Family::pareto,    Family::fisher,
    Family::laplace, Family::beta};

/// Static description of a family.
///
/// Parameter layouts (position 0, position 1):
///   uniform      a (min), b (max)          a < b
///   normal       mean, standard deviation
///   lognormal    meanlog, sdlog
///   exponential  rate
///   gamma        shape alpha, rate beta     density beta^alpha x^(alpha-1) e^(-beta x) / Gamma(alpha)
///   weibull      shape a, scale b
///   pareto       shape mu, scale c          support [c, inf); note mu comes first
///   fisher       df1, df2
///   laplace      location mu, scale sigma
///   beta         shape1 alpha, shape2 beta
struct FamilySpec {
  Family id;
  std::string_view name;          ///< "normal"
  std::string_view call;          ///< "dnorm"
  std::string_view display_name;  ///< "normal", "log-normal", "Pareto", ...
  std::size_t param_count;
  std::array<std::string_view, 2> param_names;
  double default_delta;
};

[[nodiscard]] const FamilySpec& family_spec(Family family);

/// Looks a family up by its call string ("dnorm") or plain name ("normal").
[[nodiscard]] std::optional<Family> family_from_name(std::string_view name);

/// Ordered parameter values matching a FamilySpec layout. At most two.
class Params {
 public:
  Params() = default;
  Params(std::initializer_list<double> values);
  explicit Params(std::span<const double> values);

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return {values_.data(), size_}; }

  friend bool operator==(const Params& a, const Params& b) noexcept {
    return a.size_ == b.size_ && a.values_ == b.values_;
  }

 private:
  std::array<double, 2> values_{};
  std::size_t size_ = 0;
};

/// Throws ParameterError unless `params` is a valid point of the family's
/// parameter space.
void validate_params(Family family, const Params& params);

enum class Provenance { mle, user_fixed };

struct FitResult {
  Params params;
  Provenance provenance = Provenance::mle;
};

/// A fully specified member of a family. Construction validates the
/// parameters once; all evaluation methods are const and thread-safe.
class Distribution {
 public:
  Distribution(Family family, Params params);

  [[nodiscard]] Family family() const noexcept { return family_; }
  [[nodiscard]] const Params& params() const noexcept { return params_; }

  /// Closure of the support, [lower, upper].
  [[nodiscard]] double support_lower() const noexcept;
  [[nodiscard]] double support_upper() const noexcept;
  /// True where the density is positive and finite.
  [[nodiscard]] bool in_support(double x) const noexcept;

  /// log p(x); -infinity outside the support.
  [[nodiscard]] double log_density(double x) const noexcept;
  [[nodiscard]] double density(double x) const noexcept;
  [[nodiscard]] double cdf(double x) const;
  /// Generalized inverse of the CDF, 0 <= q <= 1.
  [[nodiscard]] double quantile(double q) const;

  /// Fills `out` with i.i.d. draws.
  void sample(Rng& rng, std::span<double> out) const;
  [[nodiscard]] std::vector<double> sample(Rng& rng, std::size_t n) const;

  /// Closed-form Shannon entropy. Throws CapabilityError for Fisher.
  [[nodiscard]] double entropy() const;

 private:
  Family family_;
  Params params_;
  double log_norm_ = 0.0;  // family-specific normalizing constant
};

// Free-function forms of the Distribution methods.
[[nodiscard]] double log_density(Family family, const Params& params, double x);
[[nodiscard]] double cdf(Family family, const Params& params, double x);
[[nodiscard]] double quantile(Family family, const Params& params, double q);
[[nodiscard]] std::vector<double> sample(Family family, const Params& params, std::size_t n,
                                         Rng& rng);
[[nodiscard]] double closed_form_entropy(Family family, const Params& params);

/// Throws DataError if any observation lies outside the support on which
/// the family's maximum-likelihood estimator is defined.
void validate_support_for_fit(Family family, std::span<const double> sorted);

/// Maximum-likelihood estimate. Closed form for uniform, normal, lognormal,
/// exponential, pareto and laplace; Newton iterations on the profile or full
/// score for gamma, weibull, beta and fisher.
[[nodiscard]] FitResult fit_mle(Family family, const Sample& x);

/// Mean log-likelihood (1/n) sum log p(x_i; params).
[[nodiscard]] double mean_log_likelihood(const Distribution& dist, std::span<const double> x);

}  // namespace vsgof
