#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wdl/errors.hpp"
#include "wdl/io.hpp"

using namespace wdl;
namespace fs = std::filesystem;

namespace {

fs::path temp_path(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "wdl_unit";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto p = temp_path(name);
  std::ofstream(p) << text;
  return p;
}

fs::path income_file(const std::string& name, const std::vector<double>& incomes) {
  std::ostringstream os;
  os << "id,income\n";
  for (std::size_t i = 0; i < incomes.size(); ++i) os << i << ',' << incomes[i] << '\n';
  return write_file(name, os.str());
}

constexpr const char* kMinimal = R"({
  "population": {"n": 4, "budget": 1},
  "bounds": {"f_lo": 3, "f_hi": 4, "g_lo": 0.2, "g_hi": 0.5},
  "policies": ["min-u", "max-u"]
})";

std::string with_replaced(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string config_error_path(const std::string& json) {
  try {
    parse_config(json);
  } catch (const ConfigError& e) {
    return e.key_path();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("ingest groups sorted incomes into individuals") {
  const auto p = income_file("flat.csv", std::vector<double>(600, 5000.0));
  const auto r = ingest_income_csv(p, "income", 200, 1000.0);
  CHECK(r.welfare.size() == 3);
  CHECK((r.welfare.array() == 5.0).all());
  CHECK(r.rows_used == 600);
  CHECK(r.rows_discarded == 0);
  CHECK(r.warnings.empty());
}

TEST_CASE("ingest sorts before grouping") {
  const auto p = income_file("two.csv", {3000, 1000, 4000, 0});
  const auto r = ingest_income_csv(p, "income", 2, 1000.0);
  REQUIRE(r.welfare.size() == 2);
  CHECK(r.welfare[0] == doctest::Approx(0.5));
  CHECK(r.welfare[1] == doctest::Approx(3.5));
}

TEST_CASE("ingest drops a trailing partial group with a warning") {
  std::vector<double> incomes;
  for (int i = 0; i < 450; ++i) incomes.push_back(100.0 * i);
  const auto r = ingest_income_csv(income_file("partial.csv", incomes), "income", 200, 1.0);
  CHECK(r.welfare.size() == 2);
  CHECK(r.rows_used == 400);
  CHECK(r.rows_discarded == 50);
  CHECK(r.warnings.size() == 1);
  std::size_t binned = 0;
  for (auto c : r.histogram) binned += c;
  CHECK(binned == 450);
}

TEST_CASE("property: ingested welfare is linear in the unit") {
  std::vector<double> incomes;
  Rng rng(9);
  std::lognormal_distribution<double> ln(10.0, 1.0);
  for (int i = 0; i < 300; ++i) incomes.push_back(ln(rng));
  const auto p = income_file("lognormal.csv", incomes);
  const auto base = ingest_income_csv(p, "income", 30, 1.0);
  for (double unit : {10.0, 1000.0, 12345.0}) {
    const auto scaled = ingest_income_csv(p, "income", 30, unit);
    REQUIRE(scaled.welfare.size() == base.welfare.size());
    for (Eigen::Index i = 0; i < base.welfare.size(); ++i)
      CHECK(scaled.welfare[i] * unit == doctest::Approx(base.welfare[i]));
  }
  CHECK(std::is_sorted(base.welfare.begin(), base.welfare.end()));
}

TEST_CASE("ingest reports every bad row") {
  const auto p = write_file("bad.csv", "income\n100\nabc\n200\n\"x\"\nnan\n");
  try {
    ingest_income_csv(p, "income", 1, 1.0);
    FAIL("expected IngestError");
  } catch (const IngestError& e) {
    CHECK(e.row_errors().size() == 3);
  }
  CHECK_THROWS_AS(ingest_income_csv(p, "salary", 1, 1.0), IngestError);
  CHECK_THROWS_AS(ingest_income_csv(temp_path("missing.csv"), "income", 1, 1.0), IngestError);
}

TEST_CASE("csv splitting honours quotes") {
  CHECK(split_csv_line("a,b,c") == std::vector<std::string>{"a", "b", "c"});
  CHECK(split_csv_line(R"("x,y",2)") == std::vector<std::string>{"x,y", "2"});
  CHECK(split_csv_line(R"("he said ""hi""",)") == std::vector<std::string>{"he said \"hi\"", ""});
}

TEST_CASE("minimal config picks up documented defaults") {
  const auto cfg = parse_config(kMinimal).experiment;
  CHECK(cfg.bounds.n() == 4);
  CHECK(cfg.bounds.budget == 1);
  CHECK(cfg.horizon == 6000);
  CHECK(cfg.replications == 100);
  CHECK(cfg.noise.kind == NoiseKind::kCappedGaussian);
  CHECK(cfg.noise.sigma == 0.5);
  CHECK(std::holds_alternative<CappedNormalWelfare>(cfg.initial));
  REQUIRE(cfg.policies.size() == 2);
  CHECK(cfg.policies[1].kind == PolicyKind::kMaxU);
}

TEST_CASE("config validation names the offending key") {
  CHECK(config_error_path(with_replaced(kMinimal, "\"budget\": 1", "\"budget\": 5")) ==
        "population.budget");
  CHECK(config_error_path(with_replaced(kMinimal, "\"g_lo\": 0.2", "\"g_lo\": -0.2")) ==
        "bounds.g_lo");
  CHECK(config_error_path(with_replaced(kMinimal, "\"n\": 4", "\"n\": 4, \"colour\": 1")) ==
        "population.colour");
  CHECK(config_error_path(with_replaced(kMinimal, "\"min-u\"", "\"min-x\"")).rfind("policies", 0) ==
        0);
  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("per-individual bounds and csv initial welfare") {
  const auto csv = income_file("init.csv", {1000, 2000, 3000, 4000});
  std::string json = R"({
    "population": {"n": 2, "budget": 1},
    "bounds": {"f_lo": [3, 3.5], "f_hi": 4, "g_lo": 0.2, "g_hi": [0.5, 0.4]},
    "policies": [{"kind": "max-g", "tie_break": "lowest-index"}],
    "initial_welfare": {"kind": "csv", "path": "init.csv", "column": "income",
                        "samples_per_individual": 2, "unit": 1000},
    "seed": 9, "horizon": 50, "replications": 3
  })";
  const auto cfg = parse_config(json, csv.parent_path()).experiment;
  CHECK(cfg.bounds.f_lo[1] == 3.5);
  CHECK(cfg.bounds.g_hi[1] == 0.4);
  CHECK(cfg.policies[0].tie_break == TieBreak::kLowestIndex);
  const auto& u = std::get<Eigen::VectorXd>(cfg.initial);
  CHECK(u[0] == doctest::Approx(1.5));
  CHECK(u[1] == doctest::Approx(3.5));
  CHECK(cfg.seed == 9);
}

TEST_CASE("results file with no rows is header only") {
  std::ostringstream os;
  write_results({}, os);
  CHECK(os.str() == std::string(kResultsHeader) + "\n");
}

TEST_CASE("results rows round-trip through a file") {
  std::vector<ResultRow> rows{{"exp", "min-u", 0, 10, 0.1 + 0.2, 0.85},
                              {"exp", "random", 3, 2000, -1.0 / 3.0, std::nullopt}};
  const auto p = temp_path("rows.csv");
  write_results(rows, p);
  std::ifstream in(p);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == kResultsHeader);
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2);

  const auto back = read_results(p);
  REQUIRE(back.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back[k].policy == rows[k].policy);
    CHECK(back[k].replication == rows[k].replication);
    CHECK(back[k].checkpoint_t == rows[k].checkpoint_t);
    CHECK(std::abs(back[k].social_welfare - rows[k].social_welfare) <= 1e-12);
    CHECK(back[k].predicted_rate.has_value() == rows[k].predicted_rate.has_value());
  }
}

TEST_CASE("format_double round-trips") {
  Rng rng(8);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double x = u(rng) / (1 + k);
    REQUIRE(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("sweep csv has two rows per cell") {
  std::ostringstream os;
  write_sweep({{0.1, 0.0, 1.0, 0.0, 20, false}, {0.2, 0.5, 0.0, 0.0, 0, true}}, 10, 2000, os);
  CHECK(os.str() == std::string(kSweepHeader) +
                        "\n0.1,0,10,0,20\n0.1,0,2000,1,20\n0.2,0.5,10,,0\n0.2,0.5,2000,,0\n");
}

TEST_CASE("rates csv lists individuals then the mean") {
  const auto b = BoundSet::uniform(2, 1, 3.0, 4.0, 0.2, 0.5);
  std::ostringstream os;
  write_rates({predicted_rates(PolicyFamily::kRawlsian, b)}, os);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == kRatesHeader);
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("rawlsian,0,", 0) == 0);
  CHECK(lines[2].rfind("rawlsian,mean,", 0) == 0);
  CHECK(lines[2].find("survival") != std::string::npos);
}
