#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "oracles.hpp"
#include "vsgof/distributions.hpp"
#include "vsgof/error.hpp"

using namespace vsgof;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Case {
  Family family;
  Params params;
  double lo;  // integration range in x (or in log x when log_scale)
  double hi;
  bool log_scale;
  double mean;
  double var;
};

// One representative member per family, with integration ranges chosen so
// the truncated tail mass is far below the tolerances used.
std::vector<Case> cases() {
  const auto g = [](double x) { return std::tgamma(x); };
  const double wk = 1.7;
  const double ws = 2.5;
  const double w_mean = ws * g(1.0 + 1.0 / wk);
  const double w_var = ws * ws * g(1.0 + 2.0 / wk) - w_mean * w_mean;
  const double d1 = 5.0;
  const double d2 = 12.0;
  const double f_mean = d2 / (d2 - 2.0);
  const double f_var =
      2.0 * d2 * d2 * (d1 + d2 - 2.0) / (d1 * (d2 - 2.0) * (d2 - 2.0) * (d2 - 4.0));
  const double ln_mu = 0.3;
  const double ln_s = 0.6;
  return {
      {Family::uniform, {-1.0, 3.0}, -1.0, 3.0, false, 1.0, 16.0 / 12.0},
      {Family::normal, {1.5, 2.0}, -40.0, 43.0, false, 1.5, 4.0},
      {Family::lognormal, {ln_mu, ln_s}, -8.0, 8.0, true, std::exp(ln_mu + ln_s * ln_s / 2.0),
       (std::exp(ln_s * ln_s) - 1.0) * std::exp(2.0 * ln_mu + ln_s * ln_s)},
      {Family::exponential, {2.0}, -40.0, 4.0, true, 0.5, 0.25},
      {Family::gamma, {3.0, 2.0}, -30.0, 4.5, true, 1.5, 0.75},
      {Family::weibull, {wk, ws}, -30.0, 4.0, true, w_mean, w_var},
      {Family::pareto, {3.5, 2.0}, std::log(2.0), 40.0, true, 3.5 * 2.0 / 2.5,
       4.0 * 3.5 / (2.5 * 2.5 * 1.5)},
      {Family::fisher, {d1, d2}, -30.0, 12.0, true, f_mean, f_var},
      {Family::laplace, {-0.5, 1.5}, -80.0, 80.0, false, -0.5, 2.0 * 1.5 * 1.5},
      {Family::beta, {2.0, 5.0}, 0.0, 1.0, false, 2.0 / 7.0, 10.0 / (49.0 * 8.0)},
  };
}

double integrate_density(const Case& c, const std::function<double(double)>& h) {
  const Distribution d(c.family, c.params);
  if (c.log_scale) {
    return oracle::integrate(
        [&](double u) {
          const double x = std::exp(u);
          const double p = d.density(x);
          return p > 0.0 ? h(x) * p * x : 0.0;
        },
        c.lo, c.hi, 512);
  }
  return oracle::integrate(
      [&](double x) {
        const double p = d.density(x);
        return p > 0.0 ? h(x) * p : 0.0;
      },
      c.lo, c.hi, 512);
}

}  // namespace

TEST(FamilySpec, TableLayout) {
  for (Family f : kAllFamilies) {
    const auto& s = family_spec(f);
    EXPECT_EQ(s.id, f);
    EXPECT_EQ(s.param_count, f == Family::exponential ? 1U : 2U) << s.name;
    EXPECT_TRUE(s.default_delta == 1.0 / 12.0 || s.default_delta == 2.0 / 15.0) << s.name;
    EXPECT_EQ(family_from_name(s.call), f);
    EXPECT_EQ(family_from_name(s.name), f);
  }
  EXPECT_EQ(family_spec(Family::weibull).default_delta, 2.0 / 15.0);
  EXPECT_EQ(family_spec(Family::fisher).default_delta, 2.0 / 15.0);
  EXPECT_EQ(family_spec(Family::beta).default_delta, 2.0 / 15.0);
  EXPECT_EQ(family_spec(Family::pareto).default_delta, 1.0 / 12.0);
  EXPECT_EQ(family_spec(Family::gamma).default_delta, 1.0 / 12.0);
  EXPECT_EQ(family_spec(Family::normal).param_names[0], "Mean");
  EXPECT_EQ(family_spec(Family::normal).param_names[1], "St. dev.");
  EXPECT_EQ(family_spec(Family::pareto).param_names[0], "mu");
  EXPECT_EQ(family_spec(Family::pareto).param_names[1], "c");
  EXPECT_EQ(family_from_name("df"), Family::fisher);
  EXPECT_FALSE(family_from_name("dcauchy").has_value());
}

TEST(Params, Validation) {
  EXPECT_THROW(validate_params(Family::normal, {0.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::normal, {0.0, 0.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::normal, {0.0, -1.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::uniform, {2.0, 2.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::exponential, {1.0, 2.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::pareto, {1.0, 0.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::beta, {-1.0, 2.0}), ParameterError);
  EXPECT_THROW(validate_params(Family::laplace, {0.0, std::nan("")}), ParameterError);
  EXPECT_NO_THROW(validate_params(Family::uniform, {-1.0, 1.0}));
  try {
    validate_params(Family::normal, {-2.0});
    FAIL();
  } catch (const ParameterError& e) {
    EXPECT_NE(std::string(e.what()).find("invalid parameter"), std::string::npos);
  }
}

TEST(LogDensity, Examples) {
  EXPECT_NEAR(log_density(Family::normal, {0.0, 1.0}, 0.0), -0.5 * std::log(2.0 * std::numbers::pi),
              1e-15);
  EXPECT_NEAR(log_density(Family::pareto, {2.0, 1.0}, 1.0), std::numbers::ln2, 1e-15);
  EXPECT_EQ(log_density(Family::exponential, {2.0}, -1.0), -kInf);
  EXPECT_NEAR(log_density(Family::laplace, {1.0, 2.0}, 4.0), -std::log(4.0) - 1.5, 1e-15);
  EXPECT_NEAR(log_density(Family::gamma, {3.0, 2.0}, 1.5),
              3.0 * std::log(2.0) + 2.0 * std::log(1.5) - 3.0 - std::log(2.0), 1e-14);
}

TEST(LogDensity, FiniteExactlyOnSupport) {
  const std::vector<std::pair<Case, std::vector<std::pair<double, bool>>>> probes = {
      {cases()[0], {{-1.0, true}, {3.0, true}, {-1.0001, false}, {3.0001, false}}},
      {cases()[3], {{0.0, true}, {-1e-300, false}}},
      {cases()[6], {{2.0, true}, {1.9999999, false}}},
      {cases()[9], {{0.5, true}, {0.0, false}, {1.0, false}, {1.2, false}}},
      {cases()[2], {{1e-9, true}, {0.0, false}, {-1.0, false}}},
  };
  for (const auto& [c, pts] : probes) {
    const Distribution d(c.family, c.params);
    for (const auto& [x, inside] : pts) {
      EXPECT_EQ(std::isfinite(d.log_density(x)), inside) << family_spec(c.family).name << ' ' << x;
      if (!inside) EXPECT_EQ(d.log_density(x), -kInf);
      EXPECT_EQ(d.in_support(x), inside);
    }
  }
}

TEST(Density, IntegratesToOne) {
  for (const auto& c : cases()) {
    EXPECT_NEAR(integrate_density(c, [](double) { return 1.0; }), 1.0, 1e-6)
        << family_spec(c.family).name;
  }
}

TEST(Cdf, Examples) {
  EXPECT_NEAR(cdf(Family::pareto, {2.0, 1.0}, 2.0), 0.75, 1e-15);
  EXPECT_EQ(cdf(Family::laplace, {0.0, 1.0}, 0.0), 0.5);
  EXPECT_NEAR(quantile(Family::uniform, {0.0, 1.0}, 0.3), 0.3, 1e-15);
  EXPECT_EQ(cdf(Family::exponential, {1.0}, -3.0), 0.0);
  EXPECT_THROW((void)quantile(Family::normal, {0.0, 1.0}, 1.5), DomainError);
}

TEST(Cdf, MatchesIntegratedDensity) {
  for (const auto& c : cases()) {
    const Distribution d(c.family, c.params);
    for (double q : {0.1, 0.5, 0.8}) {
      const double x = d.quantile(q);
      Case truncated = c;
      if (c.log_scale) {
        truncated.hi = std::log(x);
      } else {
        truncated.hi = x;
      }
      const double mass = integrate_density(truncated, [](double) { return 1.0; });
      EXPECT_NEAR(d.cdf(x), mass, 1e-7) << family_spec(c.family).name << ' ' << q;
    }
  }
}

TEST(Quantile, InvertsCdfOnGrid) {
  for (const auto& c : cases()) {
    const Distribution d(c.family, c.params);
    double prev = -kInf;
    for (double q = 0.001; q < 0.9995; q += 0.001) {
      const double x = d.quantile(q);
      EXPECT_NEAR(d.cdf(x), q, 1e-9) << family_spec(c.family).name << ' ' << q;
      EXPECT_GE(x, prev);
      prev = x;
    }
    EXPECT_EQ(d.quantile(0.0), d.support_lower());
    EXPECT_EQ(d.quantile(1.0), d.support_upper());
  }
}

TEST(Sample, MomentsWithinFourStandardErrors) {
  for (const auto& c : cases()) {
    const Distribution d(c.family, c.params);
    Rng rng(1234);
    const std::size_t n = 1000;
    const auto x = d.sample(rng, n);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= n;
    EXPECT_LT(std::abs(mean - c.mean), 4.0 * std::sqrt(c.var / n)) << family_spec(c.family).name;
    for (double v : x) EXPECT_TRUE(d.in_support(v)) << family_spec(c.family).name << ' ' << v;
  }
}

TEST(Sample, ParetoSupportAndDeterminism) {
  Rng a(99);
  const auto x = sample(Family::pareto, {2.0, 1.0}, 5000, a);
  for (double v : x) EXPECT_GE(v, 1.0);
  Rng b(99);
  EXPECT_EQ(x, sample(Family::pareto, {2.0, 1.0}, 5000, b));
  Rng c(100);
  EXPECT_NE(x, sample(Family::pareto, {2.0, 1.0}, 5000, c));
}

TEST(Sample, MatchesCdfInDistribution) {
  // Kolmogorov distance of 20000 draws from the model CDF.
  for (const auto& cs : cases()) {
    const Distribution d(cs.family, cs.params);
    Rng rng(7);
    auto x = d.sample(rng, 20000);
    std::sort(x.begin(), x.end());
    double dist = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double f = d.cdf(x[i]);
      dist = std::max({dist, (i + 1.0) / x.size() - f, f - static_cast<double>(i) / x.size()});
    }
    EXPECT_LT(dist, 1.63 / std::sqrt(20000.0)) << family_spec(cs.family).name;  // 1% level
  }
}

TEST(Entropy, PublishedValues) {
  EXPECT_NEAR(closed_form_entropy(Family::normal, {0.0, 1.0}), 1.418939, 5e-7);
  EXPECT_NEAR(closed_form_entropy(Family::normal, {3.0, 1.0}), 1.418939, 5e-7);
  EXPECT_NEAR(closed_form_entropy(Family::pareto, {2.0, 1.0}), 0.8068528, 5e-8);
  EXPECT_EQ(closed_form_entropy(Family::uniform, {0.0, 1.0}), 0.0);
  EXPECT_THROW((void)closed_form_entropy(Family::fisher, {3.0, 4.0}), CapabilityError);
}

TEST(Entropy, MatchesQuadrature) {
  for (const auto& c : cases()) {
    if (c.family == Family::fisher) continue;
    const Distribution d(c.family, c.params);
    const double h = integrate_density(c, [&](double x) { return -d.log_density(x); });
    EXPECT_NEAR(d.entropy(), h, 1e-6) << family_spec(c.family).name;
  }
}
