#pragma once

// Special functions used by the bias correction, the maximum-likelihood
// fits and the asymptotic p-value. All functions are pure and reentrant;
// arguments outside the documented domain raise vsgof::DomainError.

namespace vsgof::special {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Digamma function psi(x) = d/dx log Gamma(x), x > 0.
double digamma(double x);

/// Trigamma function psi'(x), x > 0.
double trigamma(double x);

/// Harmonic number R_m = sum_{j=1}^m 1/j, with R_0 = 0.
double harmonic(long m);

/// Standard normal CDF. Saturates to exactly 0 or 1 in the far tails.
double std_normal_cdf(double z);

/// Inverse of the standard normal CDF, 0 < p < 1.
double std_normal_quantile(double p);

/// log Gamma(x), x > 0.
double log_gamma(double x);

/// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
double log_beta(double a, double b);

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double regularized_gamma_p(double a, double x);

/// Regularized incomplete beta I_x(a, b), a, b > 0, 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

}  // namespace vsgof::special
