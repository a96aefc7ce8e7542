// Copyright 2026 The openq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "openq/cli.hpp"
#include "openq/scenarios.hpp"
#include "openq/serialization.hpp"

using namespace openq;
using namespace openq::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("openq_test_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path write_file(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(OPENQ_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kResonance = R"({"scenario": "resonance", "g": 0.8, "gamma0": 0.5, "t_max": 20, "points": 101})";

}  // namespace

TEST_CASE("config parsing accepts a minimal resonance config") {
  const RunConfig cfg = parse_config(kResonance);
  CHECK(cfg.scenario == Scenario::Resonance);
  CHECK(cfg.points == 101);
  CHECK(cfg.t_max == 20.0);
  CHECK(cfg.output_stem == "resonance");
  CHECK(cfg.tol.psd == 1e-9);
  CHECK(!cfg.sweep);
  CHECK(cfg.config_hash == parse_config(kResonance).config_hash);
  CHECK(cfg.config_hash != parse_config(R"({"scenario": "resonance", "g": 0.8, "gamma0": 0.5, "t_max": 20, "points": 102})").config_hash);
}

TEST_CASE("config validation errors") {
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 5, "points": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 0, "points": 5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 5, "points": 5, "colour": 1})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "t_max": 5, "points": 5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": "1", "gamma0": 1, "t_max": 5, "points": 5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "teleport", "t_max": 5, "points": 5})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"g": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"([1, 2])"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "pseudomode", "omega1": 0, "terms": [{"g": 1, "gamma": 1}], "t_max": 5, "points": 5})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 5, "points": 5,
                                   "sweep": {"parameter": "lambda", "values": [1]}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 5, "points": 5,
                                   "tolerances": {"psd": -1}})"),
                  ConfigError);
}

TEST_CASE("parse errors report the line") {
  const std::string text = "{\n  \"scenario\": \"resonance\",\n  \"g\": 1,,\n}";
  try {
    parse_config(text);
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("fmo configs need no time grid and reproduce the dimer numbers") {
  const RunConfig cfg =
      parse_config(R"({"scenario": "fmo", "omega0": 202, "beta_inv": 53, "S": 0.02, "gamma0_half": 133})");
  const auto rep = fmo_report(cfg);
  CHECK(rep["regime"] == "oscillatory");
  CHECK(rep["n"].get<double>() == doctest::Approx(0.0226).epsilon(1e-2));
  CHECK(rep["cm-1"]["g"].get<double>() == doctest::Approx(28.57).epsilon(1e-3));
  CHECK_THROWS_AS(fmo_report(parse_config(kResonance)), ConfigError);
}

TEST_CASE("tolerance overrides") {
  RunConfig cfg = parse_config(kResonance);
  apply_tolerance_overrides(cfg, {"psd=1e-10", "tr=2e-10"});
  CHECK(cfg.tol.psd == 1e-10);
  CHECK(cfg.tol.tr == 2e-10);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"psd"}), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"psd=abc"}), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"speed=1"}), ConfigError);
  CHECK_THROWS_AS(apply_tolerance_overrides(cfg, {"tr=0"}), ConfigError);
}

TEST_CASE("resonance run writes a CSV matching the closed form and is deterministic") {
  const fs::path dir = scratch_dir("resonance");
  const RunConfig cfg = parse_config(kResonance);
  const RunResult res = run(cfg, {dir, true});
  REQUIRE(fs::exists(dir / "resonance.csv"));
  REQUIRE(fs::exists(dir / "resonance.json"));
  CHECK(res.summary["regime"] == "relaxation");
  CHECK(res.summary["sup_difference_closed_form"].get<double>() <= 1e-9);

  const CsvTable table = read_csv(dir / "resonance.csv");
  CHECK(table.columns.front() == "t");
  CHECK(table.columns.back() == "min_eig");
  REQUIRE(table.column("rho_11_re"));
  REQUIRE(table.rows.size() == 101);
  const TwoLevelInit init{1.0, 0.0};
  for (const auto& row : table.rows) {
    CHECK(std::abs(row[*table.column("rho_11_re")] - resonance_rho_s(0.8, 0.5, init, row[0])(1, 1).real()) <= 1e-9);
  }

  const std::string first = slurp(dir / "resonance.csv");
  run(cfg, {dir, true});
  CHECK(slurp(dir / "resonance.csv") == first);
}

TEST_CASE("compare reports distances between trajectories") {
  const fs::path dir = scratch_dir("compare");
  const RunConfig cfg = parse_config(kResonance);
  run(cfg, {dir, false});
  const CsvTable a = read_csv(dir / "resonance.csv");
  const CompareReport same = compare(a, a);
  CHECK(same.sup_norm == 0.0);
  CHECK(same.l2_norm == 0.0);
  CHECK(same.rows == 101);

  // closed form written in the same layout
  Trajectory closed;
  const TwoLevelInit init{1.0, 0.0};
  closed.times = uniform_grid(20.0, 101);
  for (double t : closed.times) closed.states.push_back(resonance_rho_s(0.8, 0.5, init, t));
  std::ostringstream os;
  write_trajectory_csv(os, closed, all_elements(2));
  const CompareReport rep = compare(a, parse_csv(os.str()));
  CHECK(rep.sup_norm <= 1e-9);
  CHECK(rep.l2_norm <= 1e-8);

  const CsvTable shifted = parse_csv("t,x\n0,1\n2,3\n");
  const CsvTable other = parse_csv("t,x\n0,1\n1,4\n");
  CHECK_THROWS_AS(compare(shifted, other), ConfigError);
  const CompareReport lin = compare(parse_csv("t,x\n0,1\n1,1\n"), parse_csv("t,x\n0,1\n1,3\n"));
  CHECK(lin.sup_norm == 2.0);
  CHECK(lin.l2_norm == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(compare(parse_csv("t,x\n0,1\n"), parse_csv("t,y\n0,1\n")), ConfigError);
  CHECK_THROWS_AS(parse_csv("t,x\n0,abc\n"), ConfigError);
  CHECK_THROWS_AS(parse_csv("t,x\n0\n"), ConfigError);
}

TEST_CASE("every scenario runs with invariant checks enabled") {
  const fs::path dir = scratch_dir("scenarios");
  const std::vector<std::string> configs{
      R"({"scenario": "nonhermitian", "t_max": 5, "points": 21,
          "heff": {"dim": 2, "entries": [[0.5, 0], [0.3, 0], [0.3, 0], [0, -0.4]]},
          "r0": {"dim": 2, "entries": [[0.5, 0], [0.1, 0.1], [0.1, -0.1], [0.3, 0]]}})",
      R"({"scenario": "gksl-equivalence", "t_max": 5, "points": 21,
          "heff": {"dim": 2, "entries": [[0.5, 0], [0.3, 0], [0.3, 0], [0, -0.4]]},
          "r0": {"dim": 2, "entries": [[0.5, 0], [0.1, 0.1], [0.1, -0.1], [0.3, 0]]}})",
      R"({"scenario": "pseudomode", "omega1": 0.2, "t_max": 8, "points": 81,
          "terms": [{"g": 0.4, "gamma": 1, "omega": 0}, {"g": 0.2, "gamma": 0.5, "omega": 0.7}]})",
      R"({"scenario": "friedrichs-convergence", "omega1": 0, "t_max": 8, "points": 101, "modes": [100, 200, 400],
          "terms": [{"g": 0.3, "gamma": 1, "omega": 0}]})",
      R"({"scenario": "van-hove-sweep", "g": 1, "gamma0": 0.5, "t_max": 20, "points": 201, "lambdas": [1, 0.5, 0.25]})",
      R"({"scenario": "finite-temp", "g": 1, "gamma0": 0.5, "n": 0.5, "t_max": 20, "points": 101, "lambdas": [1, 0.3, 0.1]})",
      R"({"scenario": "fmo", "omega0": 202, "beta_inv": 53, "S": 0.02, "gamma0_half": 133})"};
  for (const std::string& text : configs) {
    const RunConfig cfg = parse_config(text);
    CAPTURE(scenario_name(cfg.scenario));
    RunResult res;
    CHECK_NOTHROW(res = run(cfg, {dir, true}));
    CHECK(fs::exists(dir / (cfg.output_stem + ".json")));
    if (cfg.scenario == Scenario::VanHoveSweep || cfg.scenario == Scenario::FiniteTemp) {
      CHECK(res.summary["monotone"] == true);
    }
    if (cfg.scenario == Scenario::Fmo) CHECK(res.summary["regime"] == "oscillatory");
    if (cfg.scenario == Scenario::GkslEquivalence) {
      CHECK(fs::exists(dir / "gksl-equivalence.trajectory.json"));
      const Trajectory back = trajectory_from_json(nlohmann::json::parse(slurp(dir / "gksl-equivalence.trajectory.json")));
      CHECK(back.size() == 21);
    }
  }
}

TEST_CASE("parameter sweeps write one file set per value") {
  const fs::path dir = scratch_dir("sweep");
  const RunConfig cfg = parse_config(R"({"scenario": "resonance", "g": 0.8, "gamma0": 0.5, "t_max": 10, "points": 21,
                                         "sweep": {"parameter": "g", "values": [0.2, 0.8, 3]}})");
  const RunResult res = run(cfg, {dir, true});
  REQUIRE(res.summary.is_array());
  CHECK(res.summary.size() == 3);
  CHECK(fs::exists(dir / "resonance_g=0.2.csv"));
  CHECK(fs::exists(dir / "resonance_g=3.csv"));
  CHECK(res.summary[0]["regime"] == "oscillatory");
  CHECK(res.summary[2]["regime"] == "relaxation");
  CHECK(res.summary[0]["sweep"]["value"] == 0.2);
}

TEST_CASE("invariant and validation failures are distinguished") {
  const fs::path dir = scratch_dir("failures");
  const RunConfig growing = parse_config(R"({"scenario": "friedrichs-convergence", "omega1": 0, "t_max": 8, "points": 51,
      "modes": [400, 100], "terms": [{"g": 0.3, "gamma": 1, "omega": 0}]})");
  CHECK_THROWS_AS(run(growing, {dir, true}), InvariantFailure);
  CHECK_NOTHROW(run(growing, {dir, false}));

  const RunConfig gain = parse_config(R"({"scenario": "nonhermitian", "t_max": 5, "points": 5,
      "heff": {"dim": 1, "entries": [[0, 1]]}, "r0": {"dim": 1, "entries": [[0.5, 0]]}})");
  try {
    run(gain, {dir, true});
    FAIL("expected a validation error");
  } catch (const InvariantFailure&) {
    FAIL("wrong error class");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("nonhermitian") != std::string::npos);
  }
}

TEST_CASE("command-line exit codes") {
  const fs::path dir = scratch_dir("exit");
  const fs::path good = write_file(dir / "good.json", kResonance);
  const fs::path bad = write_file(dir / "bad.json", R"({"scenario": "resonance", "g": 1, "gamma0": 1, "t_max": 5, "points": 1})");
  const fs::path failing = write_file(dir / "failing.json", R"({"scenario": "friedrichs-convergence", "omega1": 0,
      "t_max": 8, "points": 51, "modes": [400, 100], "terms": [{"g": 0.3, "gamma": 1, "omega": 0}]})");
  const fs::path fmo =
      write_file(dir / "fmo.json", R"({"scenario": "fmo", "omega0": 202, "beta_inv": 53, "S": 0.02, "gamma0_half": 133})");
  const std::string out = " --out-dir " + (dir / "out").string();

  CHECK(run_cli("") == kUsage);
  CHECK(run_cli("launch " + good.string()) == kUsage);
  CHECK(run_cli("run") == kUsage);
  CHECK(run_cli("run " + good.string() + " --bogus") == kUsage);
  CHECK(run_cli("run " + good.string() + out + " --check") == kOk);
  CHECK(run_cli("run " + good.string() + out + " --check --tolerance psd=1e-10") == kOk);
  CHECK(run_cli("run " + good.string() + out + " --tolerance psd") == kValidation);
  CHECK(run_cli("run " + bad.string() + out) == kValidation);
  CHECK(run_cli("run " + (dir / "missing.json").string() + out) == kValidation);
  CHECK(run_cli("run " + failing.string() + out + " --check") == kInvariant);
  CHECK(run_cli("run " + failing.string() + out) == kOk);
  CHECK(run_cli("fmo-report " + fmo.string()) == kOk);
  CHECK(run_cli("fmo-report " + good.string()) == kValidation);
  const std::string csv = (dir / "out" / "resonance.csv").string();
  CHECK(run_cli("compare " + csv + " " + csv) == kOk);
  CHECK(run_cli("compare " + csv + " " + csv + " --norm sup") == kOk);
  CHECK(run_cli("compare " + csv + " " + csv + " --norm max") == kUsage);
  CHECK(run_cli("compare " + csv + " " + good.string()) == kValidation);
}
