#include "vsgof/entropy_estimator.hpp"

#include <cmath>
#include <string>

#include "vsgof/error.hpp"

namespace vsgof {
namespace {

void check_window(std::size_t n, std::size_t m) {
  if (m < 1 || m > max_window(n)) {
    throw WindowRangeError("window size " + std::to_string(m) + " outside 1 <= m < n/2 for n = " +
                           std::to_string(n));
  }
}

}  // namespace

std::optional<double> vasicek_sorted(std::span<const double> sorted, std::size_t m) {
  const std::size_t n = sorted.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t hi = std::min(i + m, n - 1);
    const std::size_t lo = i >= m ? i - m : 0;
    const double spacing = sorted[hi] - sorted[lo];
    if (!(spacing > 0.0)) return std::nullopt;
    sum += std::log(spacing);
  }
  const double dn = static_cast<double>(n);
  return std::log(dn / (2.0 * static_cast<double>(m))) + sum / dn;
}

double vasicek_estimate(const Sample& x, std::size_t m) {
  check_window(x.size(), m);
  const auto v = vasicek_sorted(x.sorted(), m);
  if (!v) {
    throw TiesError("zero spacing at window size " + std::to_string(m) +
                    ": ties too dense for this window (largest tie run " +
                    std::to_string(x.max_tie_run()) + ")");
  }
  return *v;
}

WindowScan window_scan(const Sample& x, std::size_t m_max, std::size_t m_min) {
  check_window(x.size(), m_min);
  check_window(x.size(), m_max);
  if (m_min > m_max) {
    throw WindowRangeError("empty window range");
  }
  WindowScan scan{m_min, m_max, {}};
  scan.values.reserve(m_max - m_min + 1);
  for (std::size_t m = m_min; m <= m_max; ++m) {
    scan.values.push_back(vasicek_sorted(x.sorted(), m));
  }
  return scan;
}

std::optional<std::size_t> argmax_window(const WindowScan& scan) {
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (std::size_t k = 0; k < scan.values.size(); ++k) {
    const auto& v = scan.values[k];
    if (v && (!best || *v > best_value)) {
      best = scan.m_min + k;
      best_value = *v;
    }
  }
  return best;
}

}  // namespace vsgof
