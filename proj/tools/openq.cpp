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

// openq: run scenarios, compare trajectories, print FMO estimates.
//
//   openq run <config.json> [--check] [--out-dir DIR] [--tolerance k=v]...
//   openq compare <a.csv> <b.csv> [--norm sup|l2|both]
//   openq fmo-report <config.json>

#include <iostream>

#include <CLI11.hpp>

#include "openq/cli.hpp"

namespace cli = openq::cli;

int main(int argc, char** argv) {
  CLI::App app{"Pseudomode and GKSL open-system dynamics"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  bool check = false;
  std::vector<std::string> tolerances;
  auto* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", config_path, "Scenario config (JSON)")->required();
  run->add_flag("--check", check, "Fail with exit code 3 when a numerical invariant fails");
  run->add_option("--out-dir", out_dir, "Directory for CSV/JSON outputs");
  run->add_option("--tolerance", tolerances, "Tolerance override, herm=, tr= or psd=");

  std::string csv_a, csv_b, norm = "both";
  auto* cmp = app.add_subcommand("compare", "Distance between two trajectory CSV files");
  cmp->add_option("a", csv_a)->required();
  cmp->add_option("b", csv_b)->required();
  cmp->add_option("--norm", norm)->check(CLI::IsMember({"sup", "l2", "both"}));

  std::string fmo_path;
  auto* fmo = app.add_subcommand("fmo-report", "Derived FMO dimer parameters");
  fmo->add_option("config", fmo_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (*run) {
      cli::RunConfig cfg = cli::load_config(config_path);
      cli::apply_tolerance_overrides(cfg, tolerances);
      const cli::RunResult res = cli::run(cfg, {out_dir, check});
      for (const auto& f : res.files) std::cerr << "wrote " << f.string() << '\n';
      std::cout << res.summary.dump(2) << '\n';
    } else if (*cmp) {
      const cli::CompareReport rep = cli::compare(cli::read_csv(csv_a), cli::read_csv(csv_b));
      nlohmann::json j = cli::to_json(rep);
      if (norm == "sup") j.erase("l2_norm");
      if (norm == "l2") j.erase("sup_norm");
      std::cout << j.dump(2) << '\n';
    } else if (*fmo) {
      std::cout << cli::fmo_report(cli::load_config(fmo_path)).dump(2) << '\n';
    }
  } catch (const cli::InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << '\n';
    return cli::kInvariant;
  } catch (const openq::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cli::kValidation;
  }
  return cli::kOk;
}
