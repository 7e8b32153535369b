#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vsgof::text {

/// Parses a finite real, accepting a simple fraction "p/q" as well.
[[nodiscard]] std::optional<double> parse_real(std::string_view s);

/// Shortest representation that reads back to exactly the same double.
[[nodiscard]] std::string format_real(double v);

[[nodiscard]] std::string_view trim(std::string_view s) noexcept;

/// Splits on `sep`, trimming each piece; empty input gives no pieces.
[[nodiscard]] std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace vsgof::text
