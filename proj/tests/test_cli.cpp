// Copyright 2026 The pathspin Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// End-to-end tests running the installed-style pathspin binary. The binary
// path arrives from CMake as PATHSPIN_CLI_BIN.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

struct CommandResult {
  int exit_code;
  std::string output;  // stdout only
};

CommandResult run_cli(const std::string& args) {
  const std::string command =
      std::string(PATHSPIN_CLI_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    output.append(buffer, n);
  const int status = pclose(pipe);
  return CommandResult{WEXITSTATUS(status), output};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
      if (c == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

}  // namespace

TEST_CASE("enumerate: balanced splitter transfers perfectly") {
  const CommandResult r =
      run_cli("enumerate --alpha 0.70710678 --gamma 0.6 --format csv");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 17);  // header + 16 branches
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double fidelity = std::stod(rows[i].back());
    CHECK(fidelity == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("enumerate: frozen first-row probability") {
  const CommandResult r =
      run_cli("enumerate --alpha 0.6 --gamma 0.8 --format csv");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 17);
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
  CHECK(rows[1][2] == "0");  // path bit 0 = |a>
  CHECK(rows[1][3] == "0");
  CHECK(std::stod(rows[1][4]) == doctest::Approx(0.0576).epsilon(1e-12));
}

TEST_CASE("enumerate: out-of-range flag names itself and exits 2") {
  const CommandResult r = run_cli("enumerate --alpha 2.0");
  CHECK(r.exit_code == 2);
}

TEST_CASE("enumerate json carries the schema and checks out numerically") {
  const CommandResult r =
      run_cli("enumerate --alpha 0.6 --gamma 0.8 --format json");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("schema_version").get<int>() == 1);
  CHECK(doc.at("config").at("alpha").get<double>() == 0.6);
  CHECK(doc.at("config").at("beta").get<double>() ==
        doctest::Approx(0.8).epsilon(1e-15));
  REQUIRE(doc.at("branches").size() == 16);
  double total = 0.0;
  for (const auto& br : doc.at("branches"))
    total += br.at("probability").get<double>();
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(doc.at("summary").at("f_avg_formula").get<double>() ==
        doctest::Approx(0.981568).epsilon(1e-12));
}

TEST_CASE("csv numbers round-trip at 15 significant digits") {
  const CommandResult r =
      run_cli("enumerate --alpha 0.37 --gamma 0.81 --format csv");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.output);
  // Reparse and re-serialize: printing at %.15g must be stable at 1 ulp of
  // the 15-digit representation.
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t col = 4; col < rows[i].size(); ++col) {
      if (rows[i][col] == "nan" || rows[i][col] == "I" ||
          rows[i][col] == "X" || rows[i][col] == "Y" || rows[i][col] == "Z")
        continue;
      const double value = std::stod(rows[i][col]);
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.15g", value);
      CHECK(rows[i][col] == buf);
    }
  }
}

TEST_CASE("simulate: identical seeds give byte-identical output") {
  const std::string flags =
      "simulate --runs 50 --seed 7 --alpha 0.6 --gamma 0.8 --format csv";
  const CommandResult a = run_cli(flags);
  const CommandResult b = run_cli(flags);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(a.output.find("run,m2,ma") == 0);
}

TEST_CASE("simulate: zero runs is a usage error") {
  CHECK(run_cli("simulate --runs 0").exit_code == 2);
}

TEST_CASE("simulate aggregate frequencies stay inside the binomial band") {
  const CommandResult r = run_cli(
      "simulate --runs 100000 --seed 21 --alpha 0.6 --gamma 0.8 "
      "--aggregate --format json");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.output);
  const std::size_t n = doc.at("n_runs").get<std::size_t>();
  REQUIRE(n == 100000);
  for (const auto& br : doc.at("branches")) {
    const double p = br.at("probability").get<double>();
    const double freq = br.at("frequency").get<double>();
    const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(n));
    CHECK(std::abs(freq - p) <= 3 * sigma + 1e-12);
  }
  const double mean = doc.at("summary").at("mean_fidelity").get<double>();
  const double want = doc.at("summary").at("f_avg_enumerated").get<double>();
  CHECK(std::abs(mean - want) < 0.005);
}

TEST_CASE("sweep produces the full grid with the expected anchors") {
  const CommandResult r = run_cli("sweep --alpha-steps 3 --gamma-steps 3");
  CHECK(r.exit_code == 0);
  auto rows = parse_csv(r.output);
  REQUIRE(rows.size() == 10);  // header + 9
  CHECK(rows[0] == std::vector<std::string>{"alpha", "gamma", "f_avg"});

  const CommandResult anchors = run_cli(
      "sweep --alphas 0.70710678,1.0 --gammas 0.2,0.70710678,1.0");
  const auto grid = parse_csv(anchors.output);
  REQUIRE(grid.size() == 7);
  for (std::size_t i = 1; i <= 3; ++i)  // alpha = 0.70710678 rows
    CHECK(std::stod(grid[i][2]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::stod(grid[5][2]) ==
        doctest::Approx(0.5).epsilon(1e-10));  // (1.0, 1/sqrt2)
  CHECK(std::stod(grid[6][2]) ==
        doctest::Approx(1.0).epsilon(1e-12));  // (1.0, 1.0)
}

TEST_CASE("sweep to an unwritable path exits 3") {
  CHECK(run_cli("sweep --alpha-steps 2 --gamma-steps 2 "
                "--out /nonexistent-dir/grid.csv")
            .exit_code == 3);
}

TEST_CASE("verify passes at the default tolerance") {
  const CommandResult r = run_cli("verify");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("16 branches x 441 grid points verified") !=
        std::string::npos);
}

TEST_CASE("verify fails honestly at an impossible tolerance") {
  const CommandResult r = run_cli("verify --tolerance 1e-30");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("verify names the branch when the reference table is corrupted") {
  const CommandResult r = run_cli("verify --corrupt-correction 1,0,0,1");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("m2=1") != std::string::npos);
  CHECK(r.output.find("ma=0") != std::string::npos);
  CHECK(r.output.find("path=a") != std::string::npos);
  CHECK(r.output.find("spin=1x") != std::string::npos);
}

TEST_CASE("eve reports the mixed state and the independence bound") {
  const CommandResult r = run_cli("eve --alpha 0.6 --format json");
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("rho_eve")[2][2][0].get<double>() ==
        doctest::Approx(0.36).epsilon(1e-12));
  CHECK(doc.at("rho_eve")[1][1][0].get<double>() ==
        doctest::Approx(0.64).epsilon(1e-12));
  CHECK(doc.at("input_independence").get<double>() < 1e-12);

  const CommandResult balanced =
      run_cli("eve --alpha 0.70710678 --format json");
  const json bdoc = json::parse(balanced.output);
  CHECK(bdoc.at("rho_eve")[1][1][0].get<double>() ==
        doctest::Approx(0.5).epsilon(1e-8));
  CHECK(bdoc.at("premature_leak").get<double>() > 0.1);
}

TEST_CASE("json config file feeds flags, explicit flags win") {
  const std::string path = "/tmp/pathspin_test_config.json";
  {
    std::ofstream out(path);
    out << "{\"alpha\": 0.6, \"gamma\": 0.8, \"format\": \"json\"}";
  }
  const CommandResult r = run_cli("enumerate --config " + path);
  CHECK(r.exit_code == 0);
  const json doc = json::parse(r.output);
  CHECK(doc.at("config").at("alpha").get<double>() == 0.6);

  const CommandResult overridden =
      run_cli("enumerate --config " + path + " --alpha 0.9");
  const json doc2 = json::parse(overridden.output);
  CHECK(doc2.at("config").at("alpha").get<double>() == 0.9);
  std::remove(path.c_str());
}

TEST_CASE("missing config file is an I/O error") {
  CHECK(run_cli("enumerate --config /nonexistent/c.json").exit_code == 3);
}

TEST_CASE("every subcommand emits schema-versioned JSON") {
  const std::vector<std::string> commands = {
      "enumerate --alpha 0.5 --gamma 0.5 --format json",
      "simulate --runs 5 --seed 1 --format json",
      "simulate --runs 5 --seed 1 --aggregate --format json",
      "simulate --runs 2 --seed 1 --transcript --format json",
      "sweep --alpha-steps 2 --gamma-steps 2 --format json",
      "verify --grid-steps 3 --format json",
      "eve --alpha 0.5 --format json",
  };
  for (const std::string& command : commands) {
    const CommandResult r = run_cli(command);
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.output);
    CHECK(doc.at("schema_version").get<int>() == 1);
  }
}
