#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vsgof/distributions.hpp"

namespace vsgof {

enum class PowerTest { vs, ks, cvm, ad };

[[nodiscard]] std::string_view to_string(PowerTest test) noexcept;
[[nodiscard]] std::optional<PowerTest> power_test_from_name(std::string_view name);

/// Alternative distribution, optionally pushed through x -> shift + scale * x
/// (e.g. the shifted log-normal 1 + LN(0, sigma)).
struct AlternativeSpec {
  Family family = Family::normal;
  Params params;
  double shift = 0.0;
  double scale = 1.0;
};

struct NullSpec {
  Family family = Family::normal;
  /// Unset: composite null (VS test only).
  std::optional<Params> params;
};

struct PowerScenario {
  std::string name;
  AlternativeSpec alternative;
  NullSpec null;
  std::vector<PowerTest> tests;
  std::vector<std::size_t> n_values;
  double alpha = 0.05;
  std::size_t replicates = 1000;
  /// Inner Monte-Carlo replicates for every p-value.
  std::size_t inner_replicates = 1000;
  std::uint64_t seed = 0;
  // VS options.
  std::optional<double> delta;
  bool extend = false;
  bool relax = false;
  bool simulate_p_value = true;

  /// Throws ParameterError describing the first inconsistency.
  void validate() const;
};

struct PowerRow {
  std::string scenario;
  std::size_t n = 0;
  PowerTest test = PowerTest::vs;
  std::size_t replicates = 0;
  std::size_t rejections = 0;
  /// Replicates whose test raised an error; counted as non-rejections.
  std::size_t errors = 0;
  double power_pct = 0.0;
  double se_pct = 0.0;
};

struct PowerTable {
  std::vector<PowerRow> rows;

  [[nodiscard]] const PowerRow& at(std::size_t n, PowerTest test) const;
};

/// Estimated rejection rates at level alpha for every (n, test) pair.
/// Replicate r at sample size n uses the substream derive_seed(derive_seed(seed, n), r)
/// and every test sees the same data; results do not depend on `threads`.
[[nodiscard]] PowerTable run_power_study(const PowerScenario& scenario, unsigned threads = 1);

/// Scenario file: `key = value` lines, `#` comments, optional `[name]`
/// section headers (one scenario per section; keys before the first header
/// are defaults for all sections). Throws ParseError with a line number.
[[nodiscard]] std::vector<PowerScenario> parse_scenarios(std::string_view text);
[[nodiscard]] std::vector<PowerScenario> load_scenarios(const std::string& path);

/// Aligned text table, one row per (n, test).
void write_power_table(std::ostream& out, const PowerTable& table);
/// CSV with header scenario,n,test,power_pct,se_pct,errors.
void write_power_csv(std::ostream& out, const PowerTable& table);

}  // namespace vsgof
