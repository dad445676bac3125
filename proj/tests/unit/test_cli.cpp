#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wdl/cli.hpp"

using namespace wdl;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path config_file(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "wdl_unit_cli";
  fs::create_directories(dir);
  const auto p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* kExample = R"({
  "id": "cli-example",
  "population": {"n": 4, "budget": 1},
  "bounds": {"f_lo": 3, "f_hi": 4, "g_lo": 0.2, "g_hi": 0.5},
  "policies": ["min-u", "max-u"],
  "horizon": 40, "replications": 3, "seed": 5
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("check reports the survival margin") {
  const auto r = cli({"check", "--config", config_file("check.json", kExample).string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("survival: true (zeta=0.375)") != std::string::npos);
}

TEST_CASE("ruin-bound prints the adjustment coefficient and bound") {
  const auto r = cli({"ruin-bound", "--p", "0.6", "--u", "5"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("r* = 0.405465") != std::string::npos);
  CHECK(r.out.find("lundberg bound = 0.131687") != std::string::npos);
}

TEST_CASE("ruin-bound with a custom distribution and a driftless walk") {
  CHECK(cli({"ruin-bound", "--dist", "2:0.5,-1:0.5", "--u", "1"}).out.find("0.481212") !=
        std::string::npos);
  CHECK(cli({"ruin-bound", "--p", "0.5", "--u", "1"}).code != kExitOk);
}

TEST_CASE("invalid input exits with the validation code") {
  auto bad = std::string(kExample);
  bad.replace(bad.find("\"budget\": 1"), 11, "\"budget\": 9");
  const auto r = cli({"check", "--config", config_file("bad.json", bad).string()});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("population.budget") != std::string::npos);
  CHECK(cli({"frobnicate"}).code == kExitValidation);
  CHECK(cli({}).code == kExitValidation);
  CHECK(cli({"simulate", "--config", "/nonexistent.json"}).code == kExitValidation);
}

TEST_CASE("simulate output is reproducible and seed-sensitive") {
  const auto cfg = config_file("sim.json", kExample).string();
  const auto dir = fs::temp_directory_path() / "wdl_unit_cli";
  const auto a = dir / "a.csv", b = dir / "b.csv", c = dir / "c.csv";
  REQUIRE(cli({"simulate", "--config", cfg, "--out", a.string()}).code == kExitOk);
  REQUIRE(cli({"simulate", "--config", cfg, "--out", b.string(), "--jobs", "2"}).code == kExitOk);
  REQUIRE(cli({"simulate", "--config", cfg, "--out", c.string(), "--seed", "6"}).code == kExitOk);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a) != slurp(c));
  CHECK(slurp(a).rfind("experiment_id,policy,replication,checkpoint_t,social_welfare,predicted_rate\n", 0) == 0);
}

TEST_CASE("seed changes only the stochastic columns") {
  const auto cfg = config_file("seed.json", kExample).string();
  const auto dir = fs::temp_directory_path() / "wdl_unit_cli";
  const auto a = dir / "s1.csv", b = dir / "s2.csv";
  REQUIRE(cli({"simulate", "--config", cfg, "--out", a.string(), "--seed", "1"}).code == kExitOk);
  REQUIRE(cli({"simulate", "--config", cfg, "--out", b.string(), "--seed", "2"}).code == kExitOk);
  // Everything but social_welfare (column 5) is fixed by the config.
  auto strip = [](const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
      std::vector<std::string> cols;
      std::stringstream ss(line);
      for (std::string c; std::getline(ss, c, ',');) cols.push_back(c);
      cols.erase(cols.begin() + 4);
      for (const auto& c : cols) out += c + ",";
      out += "\n";
    }
    return out;
  };
  CHECK(slurp(a) != slurp(b));
  CHECK(strip(slurp(a)) == strip(slurp(b)));
}

TEST_CASE("rates is deterministic") {
  const auto cfg = config_file("rates.json", kExample).string();
  const auto x = cli({"rates", "--config", cfg});
  CHECK(x.code == kExitOk);
  CHECK(x.out == cli({"rates", "--config", cfg}).out);
}
