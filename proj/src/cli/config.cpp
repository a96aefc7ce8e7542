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

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "openq/cli.hpp"
#include "openq/serialization.hpp"

namespace openq::cli {

namespace {

enum class Kind { Number, Integer, NonNegInteger, Matrix, Terms, NumberList, Object, String };

struct KeySpec {
  const char* name;
  Kind kind;
  bool required;
};

const std::map<Scenario, std::vector<KeySpec>>& schemas() {
  static const std::vector<KeySpec> init_keys = {
      {"rho11", Kind::Number, false}, {"rho10_re", Kind::Number, false}, {"rho10_im", Kind::Number, false}};
  auto with_init = [&](std::vector<KeySpec> v) {
    v.insert(v.end(), init_keys.begin(), init_keys.end());
    return v;
  };
  static const std::map<Scenario, std::vector<KeySpec>> table = {
      {Scenario::NonHermitian, {{"heff", Kind::Matrix, true}, {"r0", Kind::Matrix, true}}},
      {Scenario::GkslEquivalence, {{"heff", Kind::Matrix, true}, {"r0", Kind::Matrix, true}}},
      {Scenario::Pseudomode,
       {{"omega1", Kind::Number, true},
        {"terms", Kind::Terms, true},
        {"psi1_0_re", Kind::Number, false},
        {"psi1_0_im", Kind::Number, false},
        {"volterra_target", Kind::Number, false}}},
      {Scenario::FriedrichsConvergence,
       {{"omega1", Kind::Number, true},
        {"terms", Kind::Terms, true},
        {"modes", Kind::NumberList, false},
        {"K", Kind::Number, false}}},
      {Scenario::Resonance, with_init({{"g", Kind::Number, true}, {"gamma0", Kind::Number, true}})},
      {Scenario::VanHoveSweep,
       with_init({{"g", Kind::Number, true}, {"gamma0", Kind::Number, true}, {"lambdas", Kind::NumberList, false}})},
      {Scenario::FiniteTemp,
       with_init({{"g", Kind::Number, true},
                  {"gamma0", Kind::Number, true},
                  {"n", Kind::Number, true},
                  {"lambdas", Kind::NumberList, false}})},
      {Scenario::Fmo,
       {{"omega0", Kind::Number, true},
        {"beta_inv", Kind::Number, true},
        {"S", Kind::Number, true},
        {"gamma0_half", Kind::Number, true}}},
  };
  return table;
}

const std::vector<std::pair<std::string, Scenario>>& scenario_ids() {
  static const std::vector<std::pair<std::string, Scenario>> ids = {
      {"nonhermitian", Scenario::NonHermitian},
      {"gksl-equivalence", Scenario::GkslEquivalence},
      {"pseudomode", Scenario::Pseudomode},
      {"friedrichs-convergence", Scenario::FriedrichsConvergence},
      {"resonance", Scenario::Resonance},
      {"van-hove-sweep", Scenario::VanHoveSweep},
      {"finite-temp", Scenario::FiniteTemp},
      {"fmo", Scenario::Fmo},
  };
  return ids;
}

std::string fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

void check_kind(const std::string& key, const nlohmann::json& v, Kind kind) {
  auto fail = [&](const std::string& what) { throw ConfigError("key \"" + key + "\": " + what); };
  switch (kind) {
    case Kind::Number:
      if (!v.is_number()) fail("expected a number");
      break;
    case Kind::Integer:
    case Kind::NonNegInteger:
      if (!v.is_number_integer()) fail("expected an integer");
      break;
    case Kind::Matrix:
      try {
        matrix_from_json(v);
      } catch (const InvalidInput& e) {
        fail(e.what());
      }
      break;
    case Kind::Terms:
      if (!v.is_array() || v.empty()) fail("expected a non-empty array of {g, gamma, omega}");
      for (const auto& t : v) {
        if (!t.is_object()) fail("term must be an object");
        for (const auto& [k, x] : t.items()) {
          if (k != "g" && k != "g_im" && k != "gamma" && k != "omega") fail("unknown term key \"" + k + "\"");
          if (!x.is_number()) fail("term value \"" + k + "\" must be a number");
        }
        for (const char* req : {"g", "gamma", "omega"}) {
          if (!t.contains(req)) fail(std::string("term missing \"") + req + "\"");
        }
      }
      break;
    case Kind::NumberList:
      if (!v.is_array() || v.empty()) fail("expected a non-empty array of numbers");
      for (const auto& x : v) {
        if (!x.is_number()) fail("expected a non-empty array of numbers");
      }
      break;
    case Kind::Object:
      if (!v.is_object()) fail("expected an object");
      break;
    case Kind::String:
      if (!v.is_string()) fail("expected a string");
      break;
  }
}

int line_of(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(end), '\n'));
}

}  // namespace

std::string scenario_name(Scenario s) {
  for (const auto& [name, id] : scenario_ids()) {
    if (id == s) return name;
  }
  return "unknown";
}

RunConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("parse error at line " + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (!j.contains("scenario") || !j["scenario"].is_string()) {
    throw ConfigError("missing required key \"scenario\"");
  }

  RunConfig cfg;
  const std::string id = j["scenario"].get<std::string>();
  const auto& ids = scenario_ids();
  auto it = std::find_if(ids.begin(), ids.end(), [&](const auto& p) { return p.first == id; });
  if (it == ids.end()) throw ConfigError("unknown scenario \"" + id + "\"");
  cfg.scenario = it->second;
  cfg.config_hash = fnv1a(text);
  cfg.output_stem = id;

  const bool timed = cfg.scenario != Scenario::Fmo;
  const std::vector<KeySpec> common = {
      {"scenario", Kind::String, true}, {"t_max", Kind::Number, timed},
      {"points", Kind::Integer, timed}, {"tolerances", Kind::Object, false},
      {"output", Kind::String, false},  {"sweep", Kind::Object, false},
  };
  const auto& specific = schemas().at(cfg.scenario);

  for (const auto& [key, value] : j.items()) {
    auto match = [&](const KeySpec& s) { return key == s.name; };
    auto c = std::find_if(common.begin(), common.end(), match);
    auto s = std::find_if(specific.begin(), specific.end(), match);
    if (c == common.end() && s == specific.end()) {
      throw ConfigError("unknown key \"" + key + "\" for scenario " + id);
    }
    check_kind(key, value, c != common.end() ? c->kind : s->kind);
    if (s != specific.end()) cfg.params[key] = value;
  }
  for (const auto* list : {&common, &specific}) {
    for (const KeySpec& s : *list) {
      if (s.required && !j.contains(s.name)) throw ConfigError(std::string("missing required key \"") + s.name + "\"");
    }
  }

  if (j.contains("t_max")) {
    cfg.t_max = j["t_max"].get<double>();
    if (!(cfg.t_max > 0.0)) throw ConfigError("t_max must be > 0");
  }
  if (j.contains("points")) {
    const long pts = j["points"].get<long>();
    if (pts < 2) throw ConfigError("points must be >= 2");
    cfg.points = static_cast<std::size_t>(pts);
  }
  if (j.contains("output")) cfg.output_stem = j["output"].get<std::string>();
  if (j.contains("tolerances")) {
    for (const auto& [k, v] : j["tolerances"].items()) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) throw ConfigError("tolerance \"" + k + "\" must be > 0");
      const double x = v.get<double>();
      if (k == "herm") cfg.tol.herm = x;
      else if (k == "tr") cfg.tol.tr = x;
      else if (k == "psd") cfg.tol.psd = x;
      else throw ConfigError("unknown tolerance \"" + k + "\"");
    }
  }
  if (j.contains("sweep")) {
    const auto& sw = j["sweep"];
    for (const auto& [k, _] : sw.items()) {
      if (k != "parameter" && k != "values") throw ConfigError("sweep: unknown key \"" + k + "\"");
    }
    if (!sw.contains("parameter") || !sw["parameter"].is_string()) throw ConfigError("sweep: missing \"parameter\"");
    if (!sw.contains("values")) throw ConfigError("sweep: missing \"values\"");
    check_kind("sweep.values", sw["values"], Kind::NumberList);
    SweepSpec spec{sw["parameter"].get<std::string>(), sw["values"].get<std::vector<double>>()};
    const bool lambda_ladder = (cfg.scenario == Scenario::VanHoveSweep || cfg.scenario == Scenario::FiniteTemp) &&
                               spec.parameter == "lambda";
    auto numeric = std::find_if(specific.begin(), specific.end(), [&](const KeySpec& s) {
      return spec.parameter == s.name && s.kind == Kind::Number;
    });
    if (!lambda_ladder && numeric == specific.end()) {
      throw ConfigError("sweep: \"" + spec.parameter + "\" is not a numeric parameter of " + id);
    }
    cfg.sweep = std::move(spec);
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void apply_tolerance_overrides(RunConfig& cfg, const std::vector<std::string>& overrides) {
  for (const std::string& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--tolerance expects key=value, got \"" + kv + "\"");
    const std::string key = kv.substr(0, eq);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(kv.substr(eq + 1), &used);
      if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--tolerance " + key + ": not a number");
    }
    if (!(value > 0.0)) throw ConfigError("--tolerance " + key + " must be > 0");
    if (key == "herm") cfg.tol.herm = value;
    else if (key == "tr") cfg.tol.tr = value;
    else if (key == "psd") cfg.tol.psd = value;
    else throw ConfigError("--tolerance: unknown key \"" + key + "\"");
  }
}

}  // namespace openq::cli
