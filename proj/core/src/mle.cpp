// Maximum-likelihood estimation for the ten families.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>

#include "vsgof/distributions.hpp"
#include "vsgof/error.hpp"
#include "vsgof/special_math.hpp"

namespace vsgof {
namespace {

constexpr double kScoreTolerance = 1e-11;
constexpr int kMaxIterations = 500;

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double mean_log(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += std::log(v);
  return s / static_cast<double>(x.size());
}

double median_sorted(std::span<const double> sorted) {
  const std::size_t n = sorted.size();
  return (n % 2 == 1) ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
}

[[noreturn]] void degenerate(Family family) {
  throw DataError("sample has zero spread; cannot fit the " +
                  std::string(family_spec(family).name) + " family");
}

[[noreturn]] void not_converged(Family family, int iterations, double score_norm,
                                std::span<const double> last) {
  std::ostringstream msg;
  msg << "maximum-likelihood fit of the " << family_spec(family).name
      << " family did not converge after " << iterations << " iterations (score norm "
      << score_norm << ", last iterate";
  for (double v : last) msg << ' ' << v;
  msg << ')';
  throw EstimationError(msg.str());
}

// Gamma: solve log(alpha) - psi(alpha) = log(mean) - mean(log x); rate = alpha / mean.
Params fit_gamma(std::span<const double> x) {
  const double m = mean_of(x);
  const double s = std::log(m) - mean_log(x);
  if (!(s > 0.0)) degenerate(Family::gamma);

  double alpha = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const double f = std::log(alpha) - special::digamma(alpha) - s;
    if (std::abs(f) <= kScoreTolerance) {
      return Params{alpha, alpha / m};
    }
    const double df = 1.0 / alpha - special::trigamma(alpha);
    double next = alpha - f / df;
    if (!(next > 0.0)) next = 0.5 * alpha;
    alpha = next;
  }
  not_converged(Family::gamma, kMaxIterations, std::abs(std::log(alpha) - special::digamma(alpha) - s),
                std::array{alpha});
}

// Weibull: profile equation in the shape k on data rescaled by its geometric
// mean, g(k) = 1/k - sum y^k log y / sum y^k (mean log y = 0). g decreases.
Params fit_weibull(std::span<const double> x) {
  const double log_ref = mean_log(x);
  std::vector<double> ly(x.size());
  std::transform(x.begin(), x.end(), ly.begin(), [&](double v) { return std::log(v) - log_ref; });
  const double ly_max = *std::max_element(ly.begin(), ly.end());
  if (!(ly_max > 0.0)) degenerate(Family::weibull);

  struct Eval {
    double g;
    double dg;
    double log_mean_pow;  // log mean y^k
  };
  auto eval = [&](double k) {
    // Factor out exp(k * ly_max) for overflow safety.
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (double l : ly) {
      const double w = std::exp(k * (l - ly_max));
      s0 += w;
      s1 += w * l;
      s2 += w * l * l;
    }
    const double r1 = s1 / s0;
    const double r2 = s2 / s0;
    return Eval{1.0 / k - r1, -1.0 / (k * k) - (r2 - r1 * r1),
                k * ly_max + std::log(s0 / static_cast<double>(ly.size()))};
  };

  double lo = 0.0;
  double hi = 1.0;
  while (eval(hi).g > 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e8) not_converged(Family::weibull, 0, eval(hi).g, std::array{hi});
  }
  double k = (lo > 0.0) ? 0.5 * (lo + hi) : 0.5 * hi;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const Eval e = eval(k);
    if (std::abs(e.g) <= kScoreTolerance * std::max(1.0, 1.0 / k)) {
      const double scale = std::exp(log_ref + e.log_mean_pow / k);
      return Params{k, scale};
    }
    if (e.g > 0.0) {
      lo = k;
    } else {
      hi = k;
    }
    double next = k - e.g / e.dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    k = next;
  }
  not_converged(Family::weibull, kMaxIterations, std::abs(eval(k).g), std::array{k});
}

// Damped Newton ascent on a two-parameter mean log-likelihood over the
// positive quadrant. The Hessian comes from central differences of the
// analytic score.
using Objective = std::function<double(double, double)>;
using Score = std::function<std::array<double, 2>(double, double)>;

Params newton_2d(Family family, const Objective& loglik, const Score& score,
                 std::array<double, 2> theta) {
  double value = loglik(theta[0], theta[1]);
  if (!std::isfinite(value)) {
    not_converged(family, 0, std::numeric_limits<double>::infinity(), theta);
  }
  double gnorm = 0.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    const auto g = score(theta[0], theta[1]);
    gnorm = std::hypot(g[0], g[1]);
    if (gnorm <= kScoreTolerance) {
      return Params{theta[0], theta[1]};
    }

    std::array<std::array<double, 2>, 2> h{};
    for (int j = 0; j < 2; ++j) {
      const double step = 1e-5 * theta[j];
      auto up = theta;
      auto down = theta;
      up[j] += step;
      down[j] -= step;
      const auto gu = score(up[0], up[1]);
      const auto gd = score(down[0], down[1]);
      h[0][j] = (gu[0] - gd[0]) / (2.0 * step);
      h[1][j] = (gu[1] - gd[1]) / (2.0 * step);
    }
    const double off = 0.5 * (h[0][1] + h[1][0]);
    const double det = h[0][0] * h[1][1] - off * off;

    std::array<double, 2> dir{};
    if (h[0][0] < 0.0 && det > 0.0) {
      dir[0] = -(h[1][1] * g[0] - off * g[1]) / det;
      dir[1] = -(-off * g[0] + h[0][0] * g[1]) / det;
    } else {
      // Not locally concave: scaled gradient step.
      dir[0] = g[0] * theta[0] * theta[0];
      dir[1] = g[1] * theta[1] * theta[1];
      const double len = std::hypot(dir[0] / theta[0], dir[1] / theta[1]);
      if (len > 0.5) {
        dir[0] *= 0.5 / len;
        dir[1] *= 0.5 / len;
      }
    }

    double t = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
      const std::array<double, 2> cand{theta[0] + t * dir[0], theta[1] + t * dir[1]};
      if (!(cand[0] > 0.0 && cand[1] > 0.0)) continue;
      const double v = loglik(cand[0], cand[1]);
      if (std::isfinite(v) && v >= value) {
        const double moved = std::max(std::abs(cand[0] - theta[0]) / theta[0],
                                      std::abs(cand[1] - theta[1]) / theta[1]);
        theta = cand;
        value = v;
        accepted = true;
        // Steps at rounding level: the score is as small as it will get.
        if (moved < 1e-13 && gnorm <= 1e-9) return Params{theta[0], theta[1]};
        break;
      }
    }
    if (!accepted) {
      // Line search stalled at the precision of the objective.
      const auto g_now = score(theta[0], theta[1]);
      gnorm = std::hypot(g_now[0], g_now[1]);
      if (gnorm <= 1e-9) return Params{theta[0], theta[1]};
      not_converged(family, iter, gnorm, theta);
    }
  }
  not_converged(family, kMaxIterations, gnorm, theta);
}

Params fit_beta(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  double l1 = 0.0;
  double l2 = 0.0;
  for (double v : x) {
    l1 += std::log(v);
    l2 += std::log1p(-v);
  }
  l1 /= n;
  l2 /= n;

  const double m = mean_of(x);
  double var = 0.0;
  for (double v : x) var += (v - m) * (v - m);
  var /= n;
  if (!(var > 0.0)) degenerate(Family::beta);
  const double common = m * (1.0 - m) / var - 1.0;
  std::array<double, 2> init = common > 0.0 ? std::array{m * common, (1.0 - m) * common}
                                            : std::array{1.0, 1.0};

  auto loglik = [&](double a, double b) {
    return (a - 1.0) * l1 + (b - 1.0) * l2 - special::log_beta(a, b);
  };
  auto score = [&](double a, double b) {
    const double dab = special::digamma(a + b);
    return std::array{l1 - special::digamma(a) + dab, l2 - special::digamma(b) + dab};
  };
  return newton_2d(Family::beta, loglik, score, init);
}

Params fit_fisher(std::span<const double> x) {
  const double n = static_cast<double>(x.size());
  const double m = mean_of(x);
  double var = 0.0;
  for (double v : x) var += (v - m) * (v - m);
  var /= n;
  if (!(var > 0.0)) degenerate(Family::fisher);
  const double lx = mean_log(x);

  // Moment initialization: mean = d2 / (d2 - 2) when d2 > 2.
  double d2 = m > 1.0 ? 2.0 * m / (m - 1.0) : 4.0;
  d2 = std::clamp(d2, 2.5, 1e4);
  double d1 = 2.0;
  if (d2 > 4.0) {
    const double den = var * (d2 - 2.0) * (d2 - 2.0) * (d2 - 4.0) - 2.0 * d2 * d2;
    if (den > 0.0) d1 = std::clamp(2.0 * d2 * d2 * (d2 - 2.0) / den, 0.1, 1e4);
  }

  auto loglik = [&](double a, double b) {
    double s = 0.0;
    for (double v : x) s += std::log(a * v + b);
    const double log_norm = 0.5 * a * std::log(a) + 0.5 * b * std::log(b) -
                            special::log_beta(0.5 * a, 0.5 * b);
    return log_norm + (0.5 * a - 1.0) * lx - 0.5 * (a + b) * s / n;
  };
  auto score = [&](double a, double b) {
    double s_log = 0.0;
    double s_x = 0.0;
    double s_inv = 0.0;
    for (double v : x) {
      const double t = a * v + b;
      s_log += std::log(t);
      s_x += v / t;
      s_inv += 1.0 / t;
    }
    s_log /= n;
    s_x /= n;
    s_inv /= n;
    const double half_sum = 0.5 * (a + b);
    const double dab = special::digamma(half_sum);
    return std::array{
        0.5 * (std::log(a) + lx) + 0.5 - 0.5 * s_log - half_sum * s_x -
            0.5 * (special::digamma(0.5 * a) - dab),
        0.5 * std::log(b) + 0.5 - 0.5 * s_log - half_sum * s_inv -
            0.5 * (special::digamma(0.5 * b) - dab)};
  };

  // Coarse log-grid search guards against a poor moment start.
  std::array<double, 2> best{d1, d2};
  double best_value = loglik(d1, d2);
  for (double a : {0.5, 1.0, 2.0, 5.0, 10.0, 30.0}) {
    for (double b : {1.0, 3.0, 5.0, 10.0, 30.0, 100.0}) {
      const double v = loglik(a, b);
      if (std::isfinite(v) && (!std::isfinite(best_value) || v > best_value)) {
        best = {a, b};
        best_value = v;
      }
    }
  }
  return newton_2d(Family::fisher, loglik, score, best);
}

}  // namespace

void validate_support_for_fit(Family family, std::span<const double> sorted) {
  if (sorted.empty()) throw DataError("sample is empty");
  const double lo = sorted.front();
  const double hi = sorted.back();
  auto fail = [&](const char* requirement) {
    throw DataError(std::string("observations outside the support of the ") +
                    std::string(family_spec(family).name) + " family (" + requirement + ")");
  };
  switch (family) {
    case Family::uniform:
    case Family::normal:
    case Family::laplace:
      break;
    case Family::exponential:
      if (lo < 0.0) fail("all values must be >= 0");
      break;
    case Family::lognormal:
    case Family::gamma:
    case Family::weibull:
    case Family::pareto:
    case Family::fisher:
      if (!(lo > 0.0)) fail("all values must be > 0");
      break;
    case Family::beta:
      if (!(lo > 0.0) || !(hi < 1.0)) fail("all values must lie in (0, 1)");
      break;
  }
}

FitResult fit_mle(Family family, const Sample& sample) {
  if (sample.size() < 2) {
    throw DataError("at least two observations are required for estimation");
  }
  const auto sorted = sample.sorted();
  validate_support_for_fit(family, sorted);
  const auto x = sample.raw();
  const double n = static_cast<double>(x.size());

  Params params;
  switch (family) {
    case Family::uniform:
      if (!(sample.min() < sample.max())) degenerate(family);
      params = Params{sample.min(), sample.max()};
      break;
    case Family::normal:
    case Family::lognormal: {
      std::vector<double> t(x.begin(), x.end());
      if (family == Family::lognormal) {
        for (double& v : t) v = std::log(v);
      }
      const double m = mean_of(t);
      double ss = 0.0;
      for (double v : t) ss += (v - m) * (v - m);
      const double sd = std::sqrt(ss / n);
      if (!(sd > 0.0)) degenerate(family);
      params = Params{m, sd};
      break;
    }
    case Family::exponential: {
      const double m = mean_of(x);
      if (!(m > 0.0)) degenerate(family);
      params = Params{1.0 / m};
      break;
    }
    case Family::pareto: {
      const double c = sample.min();
      double s = 0.0;
      for (double v : x) s += std::log(v / c);
      if (!(s > 0.0)) degenerate(family);
      params = Params{n / s, c};
      break;
    }
    case Family::laplace: {
      const double med = median_sorted(sorted);
      double s = 0.0;
      for (double v : x) s += std::abs(v - med);
      if (!(s > 0.0)) degenerate(family);
      params = Params{med, s / n};
      break;
    }
    case Family::gamma:
      params = fit_gamma(x);
      break;
    case Family::weibull:
      params = fit_weibull(x);
      break;
    case Family::beta:
      params = fit_beta(x);
      break;
    case Family::fisher:
      params = fit_fisher(x);
      break;
  }
  validate_params(family, params);
  return FitResult{params, Provenance::mle};
}

}  // namespace vsgof
