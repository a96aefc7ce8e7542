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

#pragma once

// Config-driven scenario runner behind the `openq` command-line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "openq/types.hpp"

namespace openq::cli {

enum class Scenario {
  NonHermitian,
  GkslEquivalence,
  Pseudomode,
  FriedrichsConvergence,
  Resonance,
  VanHoveSweep,
  FiniteTemp,
  Fmo,
};

std::string scenario_name(Scenario s);

/// Exit status of the tool.
enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kInvariant = 3 };

/// Config rejected: parse error, missing or unknown key, bad value.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical invariant failed under --check.
class InvariantFailure : public Error {
 public:
  using Error::Error;
};

struct SweepSpec {
  std::string parameter;
  std::vector<double> values;
};

struct RunConfig {
  Scenario scenario = Scenario::Resonance;
  /// Scenario parameters, keys already checked against the scenario schema.
  nlohmann::json params = nlohmann::json::object();
  double t_max = 0.0;
  std::size_t points = 0;
  Tolerances tol{};
  std::string output_stem;
  std::optional<SweepSpec> sweep;
  std::string config_hash;  ///< FNV-1a of the config text
};

/// Parses and validates a flat JSON config. Unknown keys are errors.
/// Throws ConfigError; parse errors carry the line number.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Applies "key=value" overrides for herm, tr, psd.
void apply_tolerance_overrides(RunConfig& cfg, const std::vector<std::string>& overrides);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool check = false;
};

struct RunResult {
  std::vector<std::filesystem::path> files;
  nlohmann::json summary;
};

/// Executes the scenario (and its sweep, if any), writes CSV/JSON outputs.
/// Throws InvariantFailure under --check when an invariant fails.
RunResult run(const RunConfig& cfg, const RunOptions& opts);

/// Numeric CSV with a header row.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::optional<std::size_t> column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(const std::string& text);

struct CompareReport {
  double sup_norm = 0.0;
  double l2_norm = 0.0;  ///< sqrt(∫ Σ_columns |a - b|² dt), trapezoidal in t
  std::vector<std::string> columns;
  std::size_t rows = 0;
};

/// Distances between two trajectories sampled on the same grid. Columns are
/// matched by name; `t` must agree row by row. Throws ConfigError on grid mismatch.
CompareReport compare(const CsvTable& a, const CsvTable& b);

nlohmann::json to_json(const CompareReport& r);

/// FMO report config: only the fmo scenario keys are required.
nlohmann::json fmo_report(const RunConfig& cfg);

}  // namespace openq::cli
