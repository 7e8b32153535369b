#include "vsgof/power_harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "vsgof/edf_tests.hpp"
#include "vsgof/error.hpp"
#include "vsgof/parallel.hpp"
#include "vsgof/text.hpp"
#include "vsgof/vs_test.hpp"

namespace vsgof {

std::string_view to_string(PowerTest test) noexcept {
  switch (test) {
    case PowerTest::vs:
      return "vs";
    case PowerTest::ks:
      return "ks";
    case PowerTest::cvm:
      return "cvm";
    case PowerTest::ad:
      return "ad";
  }
  return "?";
}

std::optional<PowerTest> power_test_from_name(std::string_view name) {
  for (PowerTest t : {PowerTest::vs, PowerTest::ks, PowerTest::cvm, PowerTest::ad}) {
    if (name == to_string(t)) return t;
  }
  return std::nullopt;
}

void PowerScenario::validate() const {
  auto fail = [&](const std::string& what) {
    throw ParameterError("scenario '" + name + "': " + what);
  };
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (replicates < 1) fail("replicates must be >= 1");
  if (inner_replicates < 1) fail("B must be >= 1");
  if (tests.empty()) fail("no tests selected");
  if (n_values.empty()) fail("no sample sizes given");
  for (std::size_t n : n_values) {
    if (n < 3) fail("sample sizes must be >= 3");
  }
  if (alternative.scale == 0.0 || !std::isfinite(alternative.scale) ||
      !std::isfinite(alternative.shift)) {
    fail("alternative transform must be finite with nonzero scale");
  }
  validate_params(alternative.family, alternative.params);
  if (null.params) {
    validate_params(null.family, *null.params);
  } else {
    for (PowerTest t : tests) {
      if (t != PowerTest::vs) fail("EDF tests require a simple null (set null_params)");
    }
  }
}

const PowerRow& PowerTable::at(std::size_t n, PowerTest test) const {
  for (const auto& row : rows) {
    if (row.n == n && row.test == test) return row;
  }
  throw ParameterError("no power row for n = " + std::to_string(n) + ", test " +
                       std::string(to_string(test)));
}

PowerTable run_power_study(const PowerScenario& scenario, unsigned threads) {
  scenario.validate();
  const Distribution alternative(scenario.alternative.family, scenario.alternative.params);
  const std::size_t k = scenario.tests.size();

  std::vector<EdfTest> edf;
  std::vector<std::size_t> edf_slot;
  for (std::size_t j = 0; j < k; ++j) {
    switch (scenario.tests[j]) {
      case PowerTest::vs:
        break;
      case PowerTest::ks:
        edf.push_back(EdfTest::ks);
        edf_slot.push_back(j);
        break;
      case PowerTest::cvm:
        edf.push_back(EdfTest::cvm);
        edf_slot.push_back(j);
        break;
      case PowerTest::ad:
        edf.push_back(EdfTest::ad);
        edf_slot.push_back(j);
        break;
    }
  }
  std::optional<Distribution> edf_null;
  if (!edf.empty()) edf_null.emplace(scenario.null.family, *scenario.null.params);

  enum Outcome : unsigned char { accept = 0, reject = 1, error = 2 };

  PowerTable table;
  for (std::size_t n : scenario.n_values) {
    const std::uint64_t n_seed = derive_seed(scenario.seed, n);
    std::vector<Outcome> outcomes(scenario.replicates * k, accept);

    parallel_for(scenario.replicates, threads, [&](std::size_t r) {
      const std::uint64_t data_seed = derive_seed(n_seed, r);
      Rng rng(data_seed);
      std::vector<double> values = alternative.sample(rng, n);
      for (double& v : values) v = scenario.alternative.shift + scenario.alternative.scale * v;
      Outcome* out = &outcomes[r * k];

      std::optional<Sample> sample;
      try {
        sample.emplace(std::move(values));
      } catch (const Error&) {
        std::fill(out, out + k, error);
        return;
      }

      for (std::size_t j = 0; j < k; ++j) {
        if (scenario.tests[j] != PowerTest::vs) continue;
        TestOptions opts;
        opts.delta = scenario.delta;
        opts.extend = scenario.extend;
        opts.relax = scenario.relax;
        opts.simulate_p_value = scenario.simulate_p_value;
        opts.replicates = scenario.inner_replicates;
        opts.fixed_params = scenario.null.params;
        opts.seed = derive_seed(data_seed, 1);
        try {
          const auto report = vs_test(*sample, scenario.null.family, opts);
          out[j] = report.p_value <= scenario.alpha ? reject : accept;
        } catch (const Error&) {
          out[j] = error;
        }
      }

      if (!edf.empty()) {
        try {
          const auto reports = edf_mc_tests(*sample, *edf_null, edf, scenario.inner_replicates,
                                            derive_seed(data_seed, 2));
          for (std::size_t e = 0; e < edf.size(); ++e) {
            out[edf_slot[e]] = reports[e].p_value <= scenario.alpha ? reject : accept;
          }
        } catch (const Error&) {
          for (std::size_t slot : edf_slot) out[slot] = error;
        }
      }
    });

    for (std::size_t j = 0; j < k; ++j) {
      PowerRow row;
      row.scenario = scenario.name;
      row.n = n;
      row.test = scenario.tests[j];
      row.replicates = scenario.replicates;
      for (std::size_t r = 0; r < scenario.replicates; ++r) {
        const Outcome o = outcomes[r * k + j];
        row.rejections += o == reject ? 1 : 0;
        row.errors += o == error ? 1 : 0;
      }
      const double p = static_cast<double>(row.rejections) / static_cast<double>(row.replicates);
      row.power_pct = 100.0 * p;
      row.se_pct = 100.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(row.replicates));
      table.rows.push_back(row);
    }
  }
  return table;
}

namespace {

[[noreturn]] void parse_fail(const std::string& what, int line) { throw ParseError(what, line); }

double parse_real_or_fail(std::string_view v, int line, std::string_view key) {
  const auto d = text::parse_real(v);
  if (!d) parse_fail("invalid number '" + std::string(v) + "' for key '" + std::string(key) + "'", line);
  return *d;
}

std::uint64_t parse_uint_or_fail(std::string_view v, int line, std::string_view key) {
  v = text::trim(v);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || ptr != v.data() + v.size()) {
    parse_fail("invalid non-negative integer '" + std::string(v) + "' for key '" +
                   std::string(key) + "'",
               line);
  }
  return out;
}

bool parse_bool_or_fail(std::string_view v, int line, std::string_view key) {
  v = text::trim(v);
  if (v == "true" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "no" || v == "0") return false;
  parse_fail("invalid boolean '" + std::string(v) + "' for key '" + std::string(key) + "'", line);
}

Family parse_family_or_fail(std::string_view v, int line) {
  const auto f = family_from_name(text::trim(v));
  if (!f) parse_fail("unknown distribution family '" + std::string(v) + "'", line);
  return *f;
}

Params parse_params_or_fail(std::string_view v, int line, std::string_view key) {
  std::vector<double> values;
  for (auto piece : text::split(v, ',')) values.push_back(parse_real_or_fail(piece, line, key));
  if (values.size() > 2) parse_fail("at most two parameters are supported", line);
  return Params(std::span<const double>(values));
}

struct Entry {
  std::string value;
  int line;
};
using Section = std::map<std::string, Entry, std::less<>>;

PowerScenario build_scenario(const std::string& name, const Section& defaults,
                             const Section& own, int header_line) {
  Section merged = defaults;
  for (const auto& [k, v] : own) merged[k] = v;

  auto get = [&](std::string_view key) -> const Entry* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };
  auto require = [&](std::string_view key) -> const Entry& {
    const Entry* e = get(key);
    if (!e) parse_fail("scenario '" + name + "' is missing required key '" + std::string(key) + "'",
                       header_line);
    return *e;
  };

  PowerScenario s;
  s.name = name;
  {
    const Entry& e = require("null");
    s.null.family = parse_family_or_fail(e.value, e.line);
  }
  if (const Entry* e = get("null_params")) {
    s.null.params = parse_params_or_fail(e->value, e->line, "null_params");
  }
  {
    const Entry& e = require("alternative");
    s.alternative.family = parse_family_or_fail(e.value, e.line);
  }
  {
    const Entry& e = require("alternative_params");
    s.alternative.params = parse_params_or_fail(e.value, e.line, "alternative_params");
  }
  if (const Entry* e = get("alternative_shift")) {
    s.alternative.shift = parse_real_or_fail(e->value, e->line, "alternative_shift");
  }
  if (const Entry* e = get("alternative_scale")) {
    s.alternative.scale = parse_real_or_fail(e->value, e->line, "alternative_scale");
  }
  {
    const Entry& e = require("tests");
    for (auto piece : text::split(e.value, ',')) {
      const auto t = power_test_from_name(piece);
      if (!t) parse_fail("unknown test '" + std::string(piece) + "' (expected vs, ks, cvm, ad)", e.line);
      s.tests.push_back(*t);
    }
  }
  {
    const Entry& e = require("n");
    for (auto piece : text::split(e.value, ',')) {
      s.n_values.push_back(static_cast<std::size_t>(parse_uint_or_fail(piece, e.line, "n")));
    }
  }
  if (const Entry* e = get("alpha")) s.alpha = parse_real_or_fail(e->value, e->line, "alpha");
  if (const Entry* e = get("replicates")) {
    s.replicates = static_cast<std::size_t>(parse_uint_or_fail(e->value, e->line, "replicates"));
  }
  if (const Entry* e = get("B")) {
    s.inner_replicates = static_cast<std::size_t>(parse_uint_or_fail(e->value, e->line, "B"));
  }
  s.seed = parse_uint_or_fail(require("seed").value, require("seed").line, "seed");
  if (const Entry* e = get("delta")) s.delta = parse_real_or_fail(e->value, e->line, "delta");
  if (const Entry* e = get("extend")) s.extend = parse_bool_or_fail(e->value, e->line, "extend");
  if (const Entry* e = get("relax")) s.relax = parse_bool_or_fail(e->value, e->line, "relax");
  if (const Entry* e = get("simulate")) {
    s.simulate_p_value = parse_bool_or_fail(e->value, e->line, "simulate");
  }

  try {
    s.validate();
  } catch (const ParameterError& err) {
    parse_fail(err.what(), header_line);
  }
  return s;
}

constexpr std::array<std::string_view, 17> kKnownKeys = {
    "name",  "null",       "null_params", "alternative", "alternative_params", "alternative_shift",
    "alternative_scale", "tests", "n", "alpha", "replicates", "B", "seed", "delta", "extend", "relax",
    "simulate"};

bool known_key(std::string_view key) {
  return std::find(kKnownKeys.begin(), kKnownKeys.end(), key) != kKnownKeys.end();
}

}  // namespace

std::vector<PowerScenario> parse_scenarios(std::string_view text) {
  Section defaults;
  std::vector<std::pair<std::string, int>> headers;
  std::vector<Section> sections;
  Section* current = &defaults;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = text::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) parse_fail("malformed section header", line_no);
      headers.emplace_back(std::string(text::trim(line.substr(1, line.size() - 2))), line_no);
      sections.emplace_back();
      current = &sections.back();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) parse_fail("expected 'key = value'", line_no);
    const std::string key(text::trim(line.substr(0, eq)));
    const std::string value(text::trim(line.substr(eq + 1)));
    if (key.empty()) parse_fail("empty key", line_no);
    if (!known_key(key)) parse_fail("unknown key '" + key + "'", line_no);
    if (current->count(key) != 0) parse_fail("duplicate key '" + key + "'", line_no);
    (*current)[key] = Entry{value, line_no};
  }

  std::vector<PowerScenario> scenarios;
  if (sections.empty()) {
    const auto it = defaults.find("name");
    scenarios.push_back(build_scenario(it == defaults.end() ? "scenario" : it->second.value, {},
                                       defaults, 1));
  } else {
    for (std::size_t i = 0; i < sections.size(); ++i) {
      scenarios.push_back(build_scenario(headers[i].first, defaults, sections[i], headers[i].second));
    }
  }
  return scenarios;
}

std::vector<PowerScenario> load_scenarios(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenarios(buf.str());
}

void write_power_table(std::ostream& out, const PowerTable& table) {
  std::size_t name_width = 8;
  for (const auto& row : table.rows) name_width = std::max(name_width, row.scenario.size());
  out << std::left << std::setw(static_cast<int>(name_width)) << "scenario" << std::right
      << std::setw(7) << "n" << std::setw(6) << "test" << std::setw(10) << "power%"
      << std::setw(8) << "se%" << std::setw(8) << "errors" << '\n';
  out << std::fixed << std::setprecision(2);
  for (const auto& row : table.rows) {
    out << std::left << std::setw(static_cast<int>(name_width)) << row.scenario << std::right
        << std::setw(7) << row.n << std::setw(6) << to_string(row.test) << std::setw(10)
        << row.power_pct << std::setw(8) << row.se_pct << std::setw(8) << row.errors << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_power_csv(std::ostream& out, const PowerTable& table) {
  out << "scenario,n,test,power_pct,se_pct,errors\n";
  for (const auto& row : table.rows) {
    out << row.scenario << ',' << row.n << ',' << to_string(row.test) << ','
        << text::format_real(row.power_pct) << ',' << text::format_real(row.se_pct) << ','
        << row.errors << '\n';
  }
}

}  // namespace vsgof
