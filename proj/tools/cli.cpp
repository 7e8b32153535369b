#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "vsgof/entropy_estimator.hpp"
#include "vsgof/error.hpp"
#include "vsgof/rng.hpp"
#include "vsgof/sample.hpp"
#include "vsgof/text.hpp"

namespace vsgof::cli {
namespace {

using nlohmann::json;
using text::format_real;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string strip_quotes(std::string_view s) {
  s = text::trim(s);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(text::trim(s));
}

std::vector<double> read_dataset_path(const std::string& path, std::istream& in) {
  if (path == "-") return read_dataset(in);
  std::ifstream file(path);
  if (!file) throw DataError("cannot open data file '" + path + "'");
  return read_dataset(file);
}

json params_json(Family family, const Params& params) {
  const auto& spec = family_spec(family);
  json arr = json::array();
  for (std::size_t i = 0; i < params.size(); ++i) {
    arr.push_back({{"name", spec.param_names[i]}, {"value", params[i]}});
  }
  return arr;
}

Params params_from_json(const json& arr) {
  std::vector<double> v;
  for (const auto& p : arr) v.push_back(p.at("value").get<double>());
  return Params(std::span<const double>(v));
}

json scan_json(const WindowScan& scan) {
  json values = json::array();
  for (const auto& v : scan.values) values.push_back(v ? json(*v) : json(nullptr));
  return {{"m_min", scan.m_min}, {"m_max", scan.m_max}, {"values", values}};
}

WindowScan scan_from_json(const json& j) {
  WindowScan scan;
  scan.m_min = j.at("m_min").get<std::size_t>();
  scan.m_max = j.at("m_max").get<std::size_t>();
  for (const auto& v : j.at("values")) {
    scan.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
  }
  return scan;
}

std::string params_inline(Family family, const Params& params) {
  const auto& spec = family_spec(family);
  std::string s;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::string(spec.param_names[i]) + " = " + format_real(params[i]);
  }
  return s;
}

Params parse_params(const std::string& arg) {
  std::vector<double> values;
  for (auto piece : text::split(arg, ',')) {
    const auto v = text::parse_real(piece);
    if (!v) throw ParameterError("cannot parse parameter value '" + std::string(piece) + "'");
    values.push_back(*v);
  }
  if (values.empty() || values.size() > 2) {
    throw ParameterError(
        "invalid parameter (not consistent with the specified distribution): expected one or "
        "two values, got " +
        std::to_string(values.size()));
  }
  return Params(std::span<const double>(values));
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream file(path);
  if (!file) throw DataError("cannot write JSON output '" + path + "'");
  file << j.dump(2) << '\n';
}

void jitter(std::vector<double>& x, double scale, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x6a6974746572ULL));
  for (auto& v : x) v += scale * (rng.uniform() - 0.5);
}

// ---------------------------------------------------------------------------

struct EntropyArgs {
  std::string data = "-";
  std::size_t window = 0;
  bool scan = false;
  std::string json_path;
  double jitter = 0.0;
  std::uint64_t seed = 0;
};

int cmd_entropy(const EntropyArgs& a, bool has_window, bool has_seed, std::istream& in,
                std::ostream& out) {
  if (has_window == a.scan) throw UsageError("entropy: give exactly one of --window or --scan");
  auto values = read_dataset_path(a.data, in);
  if (a.jitter > 0.0) {
    if (!has_seed) throw UsageError("--jitter requires --seed");
    jitter(values, a.jitter, a.seed);
  }
  const Sample x(std::move(values));
  const auto n = x.size();
  json j{{"schema", kSchema}, {"n", n}};

  if (has_window) {
    const double v = vasicek_estimate(x, a.window);
    out << "Vasicek entropy estimate\n"
        << "n = " << n << ", window = " << a.window << "\n"
        << "estimate = " << format_real(v) << '\n';
    j["kind"] = "entropy";
    j["window"] = a.window;
    j["estimate"] = v;
  } else {
    const auto m_max = max_window(n);
    if (m_max == 0) {
      throw WindowRangeError("no admissible window for n = " + std::to_string(n) +
                             " (need at least 3 observations)");
    }
    const auto scan = window_scan(x, m_max);
    const auto best = argmax_window(scan);
    out << "Vasicek entropy estimates, n = " << n << "\n"
        << std::setw(6) << "m" << "  estimate\n";
    for (std::size_t m = scan.m_min; m <= scan.m_max; ++m) {
      const auto v = scan.at(m);
      out << std::setw(6) << m << "  " << (v ? format_real(*v) : "NA (zero spacing)") << '\n';
    }
    if (best) {
      out << "argmax window = " << *best << ", estimate = " << format_real(*scan.at(*best))
          << '\n';
    } else {
      out << "argmax window = NA (every window has a zero spacing)\n";
    }
    j["kind"] = "entropy_scan";
    j["window_scan"] = scan_json(scan);
    j["argmax_window"] = best ? json(*best) : json(nullptr);
    j["max_estimate"] = best ? json(*scan.at(*best)) : json(nullptr);
  }
  if (!a.json_path.empty()) write_json_file(a.json_path, j);
  return kOk;
}

struct TestArgs {
  std::string data = "-";
  std::string family;
  std::string params;
  std::string delta;
  bool extend = false;
  bool relax = false;
  std::size_t replicates = kDefaultReplicates;
  bool simulate = false;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string json_path;
  double jitter = 0.0;
};

int cmd_test(const TestArgs& a, bool has_simulate, bool has_seed, std::istream& in,
             std::ostream& out) {
  const auto family = family_from_name(a.family);
  if (!family) {
    throw ParameterError("unknown family '" + a.family +
                         "' (expected one of dunif, dnorm, dlnorm, dexp, dgamma, dweibull, "
                         "dpareto, df, dlaplace, dbeta)");
  }
  TestOptions opts;
  if (!a.params.empty()) {
    opts.fixed_params = parse_params(a.params);
    validate_params(*family, *opts.fixed_params);
  }
  if (!a.delta.empty()) {
    const auto d = text::parse_real(a.delta);
    if (!d) throw ParameterError("cannot parse --delta '" + a.delta + "'");
    opts.delta = *d;
  }
  opts.extend = a.extend;
  opts.relax = a.relax;
  opts.replicates = a.replicates;
  if (has_simulate) opts.simulate_p_value = a.simulate;
  opts.seed = a.seed;
  opts.threads = a.threads;

  auto values = read_dataset_path(a.data, in);
  if (a.jitter > 0.0) {
    if (!has_seed) throw UsageError("--jitter requires --seed");
    jitter(values, a.jitter, a.seed);
  }
  const Sample x(std::move(values));
  const bool monte_carlo =
      opts.extend || (has_simulate ? a.simulate : x.size() < kAsymptoticMinSize);
  if (monte_carlo && !has_seed) {
    throw UsageError("--seed is required when the p-value is computed by Monte-Carlo (n = " +
                     std::to_string(x.size()) + ")");
  }

  const auto report = vs_test(x, *family, opts);
  write_report_text(out, report, a.data == "-" ? "<stdin>" : a.data);
  if (!a.json_path.empty()) write_json_file(a.json_path, report_to_json(report, opts));
  return kOk;
}

struct PowerArgs {
  std::string scenario_path;
  std::string csv_path;
  std::string json_path;
  std::string only;
  unsigned threads = 0;
};

int cmd_power(const PowerArgs& a, std::ostream& out) {
  auto scenarios = load_scenarios(a.scenario_path);
  if (!a.only.empty()) {
    std::erase_if(scenarios, [&](const PowerScenario& s) { return s.name != a.only; });
    if (scenarios.empty()) throw UsageError("no scenario named '" + a.only + "'");
  }
  PowerTable all;
  for (const auto& s : scenarios) {
    out << "# " << s.name << '\n';
    const auto table = run_power_study(s, a.threads);
    write_power_table(out, table);
    out << '\n';
    all.rows.insert(all.rows.end(), table.rows.begin(), table.rows.end());
  }
  if (!a.csv_path.empty()) {
    std::ofstream file(a.csv_path);
    if (!file) throw DataError("cannot write CSV output '" + a.csv_path + "'");
    write_power_csv(file, all);
  }
  if (!a.json_path.empty()) write_json_file(a.json_path, power_to_json(all));
  return kOk;
}

}  // namespace

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const TiesError*>(&e)) return kTiesError;
  if (dynamic_cast<const ConstraintError*>(&e)) return kConstraintError;
  if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const WindowRangeError*>(&e) ||
      dynamic_cast<const DomainError*>(&e)) {
    return kParameterError;
  }
  if (dynamic_cast<const EstimationError*>(&e) || dynamic_cast<const CapabilityError*>(&e)) {
    return kEstimationError;
  }
  if (dynamic_cast<const DataError*>(&e) || dynamic_cast<const ParseError*>(&e)) {
    return kDataError;
  }
  return kInternalError;
}

std::vector<double> read_dataset(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const bool first = !seen_content;
    seen_content = true;
    if (t.find(',') != std::string_view::npos) {
      // A trailing comma (empty second field) is tolerated.
      const auto fields = text::split(t, ',');
      if (fields.size() != 2 || !fields[1].empty()) {
        throw ParseError("expected a single column, got " + std::to_string(fields.size()), line_no);
      }
    }
    const auto field = strip_quotes(t.substr(0, t.find(',')));
    const auto v = text::parse_real(field);
    if (!v) {
      if (first && field.find_first_of("0123456789") == std::string::npos) continue;  // header
      throw ParseError("not a finite real number: '" + field + "'", line_no);
    }
    values.push_back(*v);
  }
  if (in.bad()) throw DataError("error while reading data");
  if (values.empty()) throw DataError("the dataset contains no values");
  return values;
}

json report_to_json(const VsTestReport& r, const TestOptions& opts) {
  const auto& spec = family_spec(r.family);
  json j{
      {"schema", kSchema},
      {"kind", "vs_test"},
      {"family", spec.name},
      {"call", spec.call},
      {"n", r.n},
      {"hypothesis", r.estimate ? "composite" : "simple"},
      {"delta", r.delta},
      {"extend", opts.extend},
      {"relax", opts.relax},
      {"seed", opts.seed},
      {"statistic", r.statistic},
      {"optimal_window", r.optimal_window},
      {"p_value", r.p_value},
      {"p_value_method", to_string(r.p_value_method)},
      {"replicates", r.replicates},
      {"ignored_replicates", r.ignored_replicates},
      {"null_params", params_json(r.family, r.null_params)},
      {"empirical_null_loglik", r.empirical_null_loglik},
      {"window_scan", scan_json(r.window_scan)},
      {"warnings", r.warnings},
  };
  if (r.estimate) j["estimate"] = params_json(r.family, r.estimate->params);
  return j;
}

VsTestReport report_from_json(const json& j) {
  if (j.value("schema", "") != kSchema) throw DataError("unsupported report schema");
  VsTestReport r;
  const auto family = family_from_name(j.at("call").get<std::string>());
  if (!family) throw DataError("unknown family in report");
  r.family = *family;
  r.n = j.at("n").get<std::size_t>();
  r.delta = j.at("delta").get<double>();
  r.statistic = j.at("statistic").get<double>();
  r.optimal_window = j.at("optimal_window").get<std::size_t>();
  r.p_value = j.at("p_value").get<double>();
  r.p_value_method = j.at("p_value_method").get<std::string>() == "asymptotic"
                         ? PValueMethod::asymptotic
                         : PValueMethod::monte_carlo;
  r.replicates = j.at("replicates").get<std::size_t>();
  r.ignored_replicates = j.at("ignored_replicates").get<std::size_t>();
  r.null_params = params_from_json(j.at("null_params"));
  r.empirical_null_loglik = j.at("empirical_null_loglik").get<double>();
  r.window_scan = scan_from_json(j.at("window_scan"));
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  if (j.contains("estimate")) r.estimate = FitResult{params_from_json(j["estimate"]), Provenance::mle};
  return r;
}

void write_report_text(std::ostream& out, const VsTestReport& r, const std::string& data_label) {
  const auto& spec = family_spec(r.family);
  out << "Vasicek-Song goodness-of-fit test for the " << spec.display_name << " distribution";
  if (!r.estimate) out << " with " << params_inline(r.family, r.null_params);
  out << "\n\n";
  out << "data: " << data_label << ", n = " << r.n << '\n';
  out << "statistic = " << format_real(r.statistic) << ", optimal window = " << r.optimal_window
      << ", p-value = " << format_real(r.p_value) << '\n';
  out << "p-value method: " << to_string(r.p_value_method);
  if (r.p_value_method == PValueMethod::monte_carlo) {
    out << " (replicates = " << r.replicates << ", ignored = " << r.ignored_replicates << ")";
  }
  out << '\n';
  out << "delta = " << format_real(r.delta) << '\n';
  if (r.estimate) {
    out << "sample estimates:\n";
    for (std::size_t i = 0; i < r.estimate->params.size(); ++i) {
      out << "  " << spec.param_names[i] << " = " << format_real(r.estimate->params[i]) << '\n';
    }
  }
  for (const auto& w : r.warnings) out << "warning: " << w << '\n';
}

json power_to_json(const PowerTable& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back({{"scenario", row.scenario},
                    {"n", row.n},
                    {"test", to_string(row.test)},
                    {"replicates", row.replicates},
                    {"rejections", row.rejections},
                    {"errors", row.errors},
                    {"power_pct", row.power_pct},
                    {"se_pct", row.se_pct}});
  }
  return {{"schema", kSchema}, {"kind", "power"}, {"rows", rows}};
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Vasicek-Song goodness-of-fit tests", "vsgof"};
  app.require_subcommand(1);

  EntropyArgs ea;
  auto* entropy = app.add_subcommand("entropy", "Spacing estimate of Shannon entropy");
  entropy->add_option("data", ea.data, "Data file, or - for standard input")->capture_default_str();
  auto* window_opt = entropy->add_option("--window", ea.window, "Window size m, 1 <= m < n/2");
  entropy->add_flag("--scan", ea.scan, "Estimate for every admissible window and report the argmax");
  entropy->add_option("--json", ea.json_path, "Write a JSON report to this path");
  entropy->add_option("--jitter", ea.jitter, "Add uniform noise of this width before estimating");
  auto* entropy_seed = entropy->add_option("--seed", ea.seed, "Seed for --jitter");

  TestArgs ta;
  auto* test = app.add_subcommand("test", "Vasicek-Song goodness-of-fit test");
  test->add_option("data", ta.data, "Data file, or - for standard input")->capture_default_str();
  test->add_option("--family", ta.family, "Null family: dunif, dnorm, dlnorm, dexp, dgamma, "
                                          "dweibull, dpareto, df, dlaplace, dbeta")
      ->required();
  test->add_option("--params", ta.params,
                   "Comma-separated parameters of a simple null (composite when omitted)");
  test->add_option("--delta", ta.delta, "Window bound exponent offset (e.g. 1/12)");
  test->add_flag("--extend", ta.extend, "Search every window m < n/2");
  test->add_flag("--relax", ta.relax, "Drop the maximal-entropy constraint");
  test->add_option("--B", ta.replicates, "Monte-Carlo replicates")->capture_default_str();
  auto* simulate_opt =
      test->add_option("--simulate-p", ta.simulate, "Force (true) or disable (false) Monte-Carlo p-values");
  auto* test_seed = test->add_option("--seed", ta.seed, "Seed; required for Monte-Carlo p-values");
  test->add_option("--threads", ta.threads, "Worker threads, 0 = all cores")->capture_default_str();
  test->add_option("--json", ta.json_path, "Write a JSON report to this path");
  test->add_option("--jitter", ta.jitter, "Add uniform noise of this width to break ties");

  PowerArgs pa;
  auto* power = app.add_subcommand("power", "Power study from a scenario file");
  power->add_option("file", pa.scenario_path, "Scenario file")->required();
  power->add_option("--csv", pa.csv_path, "Write the power table as CSV");
  power->add_option("--json", pa.json_path, "Write the power table as JSON");
  power->add_option("--only", pa.only, "Run only the named scenario");
  power->add_option("--threads", pa.threads, "Worker threads, 0 = all cores")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*entropy) {
      return cmd_entropy(ea, window_opt->count() > 0, entropy_seed->count() > 0, in, out);
    }
    if (*test) return cmd_test(ta, simulate_opt->count() > 0, test_seed->count() > 0, in, out);
    return cmd_power(pa, out);
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "error: " << e.what() << '\n';
    if (code == kTiesError) {
      err << "hint: tied observations give zero spacings; try a larger window, --scan, --extend "
             "or --jitter\n";
    } else if (dynamic_cast<const WindowRangeError*>(&e)) {
      err << "hint: the window must satisfy 1 <= m < n/2; --scan lists every admissible window\n";
    }
    return code;
  }
}

}  // namespace vsgof::cli
