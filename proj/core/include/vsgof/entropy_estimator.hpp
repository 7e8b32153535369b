#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "vsgof/sample.hpp"

namespace vsgof {

/// Vasicek estimates V_mn for a contiguous range of window sizes.
/// An entry is empty (non-computable) when some spacing at that m is zero.
struct WindowScan {
  std::size_t m_min = 1;
  std::size_t m_max = 0;
  std::vector<std::optional<double>> values;  // values[m - m_min]

  [[nodiscard]] std::optional<double> at(std::size_t m) const { return values.at(m - m_min); }
  [[nodiscard]] bool empty() const noexcept { return values.empty(); }
};

/// Largest admissible window for n observations: the largest m with m < n/2.
[[nodiscard]] constexpr std::size_t max_window(std::size_t n) noexcept {
  return n < 3 ? 0 : (n + 1) / 2 - 1;
}

/// Spacing estimate of Shannon entropy
///   V_mn = (1/n) sum_i log( n/(2m) * (X(i+m) - X(i-m)) ),
/// with X(j) = X(1) for j < 1 and X(j) = X(n) for j > n.
/// Throws WindowRangeError unless 1 <= m < n/2, TiesError on a zero spacing.
[[nodiscard]] double vasicek_estimate(const Sample& x, std::size_t m);

/// V_mn for every m in [m_min, m_max]; zero spacings are flagged per entry.
[[nodiscard]] WindowScan window_scan(const Sample& x, std::size_t m_max, std::size_t m_min = 1);

/// Span-level kernel shared by the two entry points above: V_mn over sorted
/// data, or std::nullopt when a spacing is zero. No range checks.
[[nodiscard]] std::optional<double> vasicek_sorted(std::span<const double> sorted, std::size_t m);

/// Window maximizing the estimate over all computable entries (smallest m
/// among ties); std::nullopt if none is computable.
[[nodiscard]] std::optional<std::size_t> argmax_window(const WindowScan& scan);

}  // namespace vsgof
