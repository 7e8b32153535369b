#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "vsgof/error.hpp"

namespace fs = std::filesystem;
using vsgof::cli::run;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "vsgof");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "vsgof_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream f(p);
  return nlohmann::json::parse(f);
}

std::string lines(const std::vector<double>& v) {
  std::ostringstream s;
  s.precision(17);
  for (double x : v) s << x << '\n';
  return s.str();
}

std::vector<double> normal_draws(std::size_t n, std::uint64_t seed) {
  vsgof::Rng rng(seed);
  return vsgof::sample(vsgof::Family::normal, {2.0, 3.0}, n, rng);
}

// Value following "key = " up to the next comma or newline.
std::string field(const std::string& text, const std::string& key) {
  const auto at = text.find(key + " = ");
  if (at == std::string::npos) return {};
  const auto start = at + key.size() + 3;
  return text.substr(start, text.find_first_of(",\n", start) - start);
}

}  // namespace

TEST(CliEntropy, SingleWindow) {
  const auto r = invoke({"entropy", "--window", "1"}, "1\n2\n3\n4\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("estimate = 1.0397207708399"), std::string::npos) << r.out;
}

TEST(CliEntropy, ScanJson) {
  const auto path = scratch("scan.json");
  const auto r = invoke({"entropy", "--scan", "--json", path.string()}, lines(normal_draws(20, 3)));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json(path);
  EXPECT_EQ(j["kind"], "entropy_scan");
  EXPECT_EQ(j["window_scan"]["m_min"], 1);
  EXPECT_EQ(j["window_scan"]["m_max"], 9);
  EXPECT_EQ(j["window_scan"]["values"].size(), 9U);
  EXPECT_TRUE(j["argmax_window"].is_number());
}

TEST(CliEntropy, UsageAndRangeErrors) {
  EXPECT_EQ(invoke({"entropy"}, "1\n2\n3\n").code, 1);
  EXPECT_EQ(invoke({"entropy", "--window", "1", "--scan"}, "1\n2\n3\n").code, 1);
  const auto r = invoke({"entropy", "--window", "2"}, "1\n2\n3\n4\n");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("hint:"), std::string::npos);
  EXPECT_EQ(invoke({"entropy", "--window", "1", "--jitter", "0.1"}, "1\n2\n3\n").code, 1);
}

TEST(CliTest, SimpleNullOmitsEstimates) {
  const auto data = lines(normal_draws(100, 7));
  const auto simple = invoke({"test", "--family", "dnorm", "--params", "2,3"}, data);
  ASSERT_EQ(simple.code, 0) << simple.err;
  EXPECT_NE(simple.out.find("normal distribution with Mean = 2, St. dev. = 3"), std::string::npos)
      << simple.out;
  EXPECT_EQ(simple.out.find("sample estimates"), std::string::npos);
  const auto composite = invoke({"test", "--family", "dnorm"}, data);
  ASSERT_EQ(composite.code, 0) << composite.err;
  EXPECT_NE(composite.out.find("sample estimates:"), std::string::npos);
  EXPECT_NE(composite.out.find("p-value method: asymptotic"), std::string::npos);
}

TEST(CliTest, TextAndJsonAgreeExactly) {
  const auto path = scratch("report.json");
  const auto r = invoke({"test", "--family", "dgamma", "--seed", "5", "--B", "200", "--json",
                         path.string()},
                        lines({0.8, 1.9, 0.4, 2.7, 1.1, 0.65, 3.3, 1.45, 0.9, 2.2, 0.3, 1.7, 4.1,
                               1.25, 0.55, 2.9, 1.05, 0.75, 1.6, 2.45}));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = read_json(path);
  EXPECT_EQ(j["schema"], vsgof::cli::kSchema);
  EXPECT_EQ(j["p_value_method"], "monte_carlo");
  EXPECT_EQ(j["hypothesis"], "composite");
  EXPECT_EQ(std::stod(field(r.out, "statistic")), j["statistic"].get<double>());
  EXPECT_EQ(std::stod(field(r.out, "p-value")), j["p_value"].get<double>());
  EXPECT_EQ(std::stoul(field(r.out, "optimal window")), j["optimal_window"].get<std::size_t>());
  EXPECT_EQ(std::stod(field(r.out, "  Shape")), j["estimate"][0]["value"].get<double>());

  const auto back = vsgof::cli::report_from_json(j);
  vsgof::TestOptions opts;
  opts.seed = 5;
  EXPECT_EQ(vsgof::cli::report_to_json(back, opts), j);
}

TEST(CliTest, ExitCodes) {
  const auto normal = lines(normal_draws(100, 1));
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--params", "0"}, normal).code, 3);
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--params", "0,-1"}, normal).code, 3);
  EXPECT_EQ(invoke({"test", "--family", "dfoo"}, normal).code, 3);
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--delta", "1/3"}, normal).code, 3);
  EXPECT_EQ(invoke({"test"}, normal).code, 1);
  EXPECT_EQ(invoke({"test", "--family", "dexp"}, "1\n2\nx7\n").code, 2);
  EXPECT_EQ(invoke({"test", "--family", "dexp", "--params", "1"}, normal).code, 2);

  const auto constraint =
      invoke({"test", "--family", "dpareto", "--simulate-p", "false"}, "0.1\n0.23\n4.42\n");
  EXPECT_EQ(constraint.code, 4) << constraint.err;

  std::string tied;
  for (int i = 0; i < 5; ++i) tied += "-1.5\n";
  for (int i = 0; i < 25; ++i) tied += std::to_string(-1.4 + 0.12 * i) + "\n";
  const auto ties = invoke({"test", "--family", "dnorm", "--seed", "1"}, tied);
  EXPECT_EQ(ties.code, 5);
  EXPECT_NE(ties.err.find("--extend"), std::string::npos);
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--seed", "1", "--B", "100", "--extend"}, tied)
                .code,
            0);
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--seed", "1", "--B", "100", "--jitter", "0.01"},
                   tied)
                .code,
            0);

  // Monte-Carlo without a seed
  const auto small = lines(normal_draws(30, 2));
  const auto noseed = invoke({"test", "--family", "dnorm"}, small);
  EXPECT_EQ(noseed.code, 1);
  EXPECT_NE(noseed.err.find("--seed"), std::string::npos);
  EXPECT_EQ(invoke({"test", "--family", "dnorm", "--simulate-p", "false"}, small).code, 0);
}

TEST(CliPower, MalformedScenarioReportsLine) {
  const auto path = scratch("bad.scn");
  std::ofstream(path) << "# comment\nnull = dexp\nthis line is wrong\n";
  const auto r = invoke({"power", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST(CliPower, RunsAndWritesCsv) {
  const auto path = scratch("tiny.scn");
  const auto csv = scratch("tiny.csv");
  std::ofstream(path) << "[tiny]\nnull = dexp\nnull_params = 1\nalternative = dexp\n"
                         "alternative_params = 1\ntests = vs, ks\nn = 20\nreplicates = 5\n"
                         "B = 20\nseed = 1\n";
  const auto r = invoke({"power", path.string(), "--csv", csv.string(), "--only", "tiny"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "scenario,n,test,power_pct,se_pct,errors");
  EXPECT_EQ(invoke({"power", path.string(), "--only", "other"}).code, 1);
}

TEST(ReadDataset, HeadersCsvAndComments) {
  std::istringstream a("# note\nvalue\n1.5\n\n2.5,\n\"3\"\n");
  EXPECT_EQ(vsgof::cli::read_dataset(a), (std::vector<double>{1.5, 2.5, 3.0}));
  std::istringstream b("1,2\n");
  EXPECT_THROW((void)vsgof::cli::read_dataset(b), vsgof::ParseError);
  std::istringstream c("1\nfoo\n");
  try {
    (void)vsgof::cli::read_dataset(c);
    FAIL();
  } catch (const vsgof::ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  std::istringstream d("# only comments\n");
  EXPECT_THROW((void)vsgof::cli::read_dataset(d), vsgof::DataError);
  std::istringstream e("1\nnan\n");
  EXPECT_THROW((void)vsgof::cli::read_dataset(e), vsgof::ParseError);
}
