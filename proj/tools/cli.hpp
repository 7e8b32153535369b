#pragma once

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "vsgof/power_harness.hpp"
#include "vsgof/vs_test.hpp"

namespace vsgof::cli {

inline constexpr const char* kSchema = "vsgof.report/1";

/// Process exit codes. Stable across releases.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,        ///< unreadable or invalid data / scenario files
  kParameterError = 3,   ///< family parameters, delta, window range
  kConstraintError = 4,  ///< constraint violated for every candidate window
  kTiesError = 5,        ///< too many ties for any candidate window
  kEstimationError = 6,  ///< MLE or Monte-Carlo failure
  kInternalError = 70,
};

[[nodiscard]] int exit_code_for(const std::exception& e) noexcept;

/// One value per line, or a single CSV column with an optional header line.
/// Blank lines and lines starting with '#' are skipped.
[[nodiscard]] std::vector<double> read_dataset(std::istream& in);

[[nodiscard]] nlohmann::json report_to_json(const VsTestReport& report, const TestOptions& opts);
/// Inverse of report_to_json for the report fields.
[[nodiscard]] VsTestReport report_from_json(const nlohmann::json& j);
void write_report_text(std::ostream& out, const VsTestReport& report, const std::string& data_label);

[[nodiscard]] nlohmann::json power_to_json(const PowerTable& table);

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace vsgof::cli
