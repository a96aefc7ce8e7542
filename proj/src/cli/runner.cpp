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
#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "openq/cli.hpp"
#include "openq/gksl.hpp"
#include "openq/kernels.hpp"
#include "openq/pseudomode.hpp"
#include "openq/scenarios.hpp"
#include "openq/serialization.hpp"

namespace openq::cli {

namespace {

using nlohmann::json;

struct Context {
  const RunConfig& cfg;
  std::filesystem::path out_dir;
  std::string stem;
  bool check;
  std::vector<std::filesystem::path> files;

  std::filesystem::path path(const std::string& ext) const { return out_dir / (stem + ext); }

  std::ofstream open(const std::string& ext) {
    const auto p = path(ext);
    std::ofstream os(p);
    if (!os) throw Error("cannot write " + p.string());
    files.push_back(p);
    return os;
  }

  void require(bool ok, const std::string& what) const {
    if (check && !ok) throw InvariantFailure(scenario_name(cfg.scenario) + ": " + what);
  }
};

double num(const RunConfig& cfg, const char* key, double fallback) {
  return cfg.params.contains(key) ? cfg.params[key].get<double>() : fallback;
}

double num(const RunConfig& cfg, const char* key) { return cfg.params.at(key).get<double>(); }

TwoLevelInit init_state(const RunConfig& cfg) {
  TwoLevelInit init{num(cfg, "rho11", 1.0), Complex(num(cfg, "rho10_re", 0.0), num(cfg, "rho10_im", 0.0))};
  init.validate();
  return init;
}

PseudomodeParams pseudomode_params(const RunConfig& cfg) {
  PseudomodeParams p;
  p.omega1 = num(cfg, "omega1");
  for (const auto& t : cfg.params.at("terms")) {
    p.terms.push_back({Complex(t.at("g").get<double>(), t.value("g_im", 0.0)), t.at("gamma").get<double>(),
                       t.at("omega").get<double>()});
  }
  p.validate();
  return p;
}

std::vector<double> lambda_ladder(const RunConfig& cfg) {
  if (cfg.sweep && cfg.sweep->parameter == "lambda") return cfg.sweep->values;
  if (cfg.params.contains("lambdas")) return cfg.params["lambdas"].get<std::vector<double>>();
  return {1.0, 0.5, 0.25, 0.1};
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

json tolerances_json(const Tolerances& t) { return {{"herm", t.herm}, {"tr", t.tr}, {"psd", t.psd}}; }

// Validates every state; returns the number of failures.
std::size_t count_invalid(const std::vector<Matrix>& states, const Tolerances& tol, bool normalized) {
  std::size_t bad = 0;
  for (const Matrix& m : states) {
    const DensityReport rep = normalized ? validate_density_matrix(m, tol) : validate_nonnormalized(m, tol);
    if (!rep.ok()) ++bad;
  }
  return bad;
}

double sup_diff(const std::vector<Matrix>& a, const std::vector<Matrix>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto n = static_cast<std::size_t>(a[i].size());
    s = std::max(s, kernels::max_abs_diff({a[i].data(), n}, {b[i].data(), n}));
  }
  return s;
}

void write_csv(Context& ctx, const Trajectory& traj) {
  auto os = ctx.open(".csv");
  const auto elems = all_elements(static_cast<int>(traj.states.front().rows()));
  write_trajectory_csv(os, traj, elems);
}

void write_rows_csv(Context& ctx, const std::vector<LimitRow>& rows) {
  auto os = ctx.open(".csv");
  os << "lambda,sup_error\n" << std::setprecision(17);
  for (const LimitRow& r : rows) os << r.lambda << ',' << r.sup_error << '\n';
}

json rows_json(const std::vector<LimitRow>& rows) {
  json out = json::array();
  for (const LimitRow& r : rows) out.push_back({{"lambda", r.lambda}, {"sup_error", r.sup_error}});
  return out;
}

std::vector<double> errors_of(const std::vector<LimitRow>& rows) {
  std::vector<double> e;
  for (const LimitRow& r : rows) e.push_back(r.sup_error);
  return e;
}

json run_nonhermitian(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const EffectiveHamiltonian heff(matrix_from_json(cfg.params["heff"]));
  const NonNormalizedDensityMatrix r0(matrix_from_json(cfg.params["r0"]), cfg.tol);
  const HeffDecomposition dec = decompose_heff(heff, cfg.tol);
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  const auto rs = evolve_R(heff, r0, times, cfg.tol);

  Trajectory traj;
  traj.times = times;
  for (const auto& r : rs) traj.states.push_back(r.matrix());
  traj.metadata["solver"] = NonHermitianPropagator(heff).uses_eigendecomposition() ? "eigendecomposition" : "pade-exp";
  write_csv(ctx, traj);

  bool monotone = true;
  for (std::size_t i = 1; i < rs.size(); ++i) monotone &= rs[i].trace() <= rs[i - 1].trace() + 1e-10;
  const std::size_t invalid = count_invalid(traj.states, cfg.tol, false);
  ctx.require(invalid == 0, std::to_string(invalid) + " states violate non-normalized invariants");
  ctx.require(monotone, "trace increased along the trajectory");
  return {{"gammas", dec.gammas},
          {"trace_initial", rs.front().trace()},
          {"trace_final", rs.back().trace()},
          {"trace_decay_rate_initial", trace_decay_rate(r0, dec)},
          {"trace_non_increasing", monotone},
          {"invalid_states", invalid},
          {"solver", traj.metadata["solver"]}};
}

json run_gksl_equivalence(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const EffectiveHamiltonian heff(matrix_from_json(cfg.params["heff"]));
  const NonNormalizedDensityMatrix r0(matrix_from_json(cfg.params["r0"]), cfg.tol);
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  const LindbladModel model = build_gksl_from_heff(heff, cfg.tol);
  const Trajectory traj = propagate(model, normalization_reconstruction(r0, cfg.tol), times, {.tol = cfg.tol});
  std::vector<Matrix> reference;
  for (const auto& r : evolve_R(heff, r0, times, cfg.tol)) {
    reference.push_back(normalization_reconstruction(r, cfg.tol).matrix());
  }
  write_csv(ctx, traj);
  {
    auto os = ctx.open(".trajectory.json");
    os << trajectory_to_json(traj).dump(1) << '\n';
  }
  const double diff = sup_diff(traj.states, reference);
  const std::size_t invalid = count_invalid(traj.states, cfg.tol, true);
  ctx.require(diff <= 1e-9, "GKSL vs reconstructed non-Hermitian propagation differ by " + std::to_string(diff));
  ctx.require(invalid == 0, std::to_string(invalid) + " states fail density-matrix validation");
  return {{"sup_difference", diff},
          {"jumps", model.jumps().size()},
          {"invalid_states", invalid},
          {"solver", traj.metadata.at("solver")}};
}

json run_pseudomode(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudomodeParams p = pseudomode_params(cfg);
  const Complex psi0(num(cfg, "psi1_0_re", 1.0), num(cfg, "psi1_0_im", 0.0));
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  const AmplitudeSeries pm = pseudomode_amplitude(p, psi0, times);
  const RichardsonResult vol = solve_volterra_converged(p, cfg.t_max, psi0, num(cfg, "volterra_target", 1e-7),
                                                        cfg.points);
  {
    auto os = ctx.open(".csv");
    write_amplitude_csv(os, pm);
  }
  const double diff = kernels::max_abs_diff(pm.values, vol.series.values);
  bool bounded = true;
  for (const Complex& v : pm.values) bounded &= std::abs(v) <= std::abs(psi0) + 1e-12;
  ctx.require(diff <= 1e-6, "pseudomode vs Volterra differ by " + std::to_string(diff));
  ctx.require(bounded, "|psi_1(t)| exceeded |psi_1(0)|");
  return {{"sup_difference_volterra", diff},
          {"volterra_step", vol.h},
          {"volterra_observed_order", vol.observed_order},
          {"volterra_error_estimate", vol.error_estimate},
          {"amplitude_bounded", bounded}};
}

json run_friedrichs(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const PseudomodeParams p = pseudomode_params(cfg);
  const double k = num(cfg, "K", 40.0);
  std::vector<double> modes = {100, 200, 400, 800};
  if (cfg.params.contains("modes")) modes = cfg.params["modes"].get<std::vector<double>>();
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  const AmplitudeSeries pm = pseudomode_amplitude(p, 1.0, times);

  json rows = json::array();
  std::vector<double> errors;
  std::vector<AmplitudeSeries> series;
  double worst_norm = 0.0;
  for (double nd : modes) {
    if (!(nd >= 2.0) || nd != std::floor(nd)) throw InvalidInput("modes must be integers >= 2");
    const DiscretizedBath bath = discretize_bath(p, static_cast<std::size_t>(nd), k);
    const FriedrichsResult fr = evolve_friedrichs(bath, p.omega1, 1.0, times);
    double err = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      err = std::max(err, std::abs(std::norm(fr.psi1.values[i]) - std::norm(pm.values[i])));
    }
    for (double nrm : fr.norm) worst_norm = std::max(worst_norm, std::abs(nrm - 1.0));
    errors.push_back(err);
    rows.push_back({{"modes", static_cast<long>(nd)}, {"sup_population_error", err}});
    series.push_back(fr.psi1);
  }
  {
    auto os = ctx.open(".csv");
    os << "t,pseudomode_abs2";
    for (double nd : modes) os << ",friedrichs_" << static_cast<long>(nd) << "_abs2";
    os << '\n' << std::setprecision(17);
    for (std::size_t i = 0; i < times.size(); ++i) {
      os << times[i] << ',' << std::norm(pm.values[i]);
      for (const auto& s : series) os << ',' << std::norm(s.values[i]);
      os << '\n';
    }
  }
  const bool monotone = strictly_decreasing(errors);
  ctx.require(monotone, "Friedrichs error is not strictly decreasing in N");
  ctx.require(worst_norm <= 1e-10, "Friedrichs norm not conserved");
  return {{"rows", rows}, {"K", k}, {"monotone", monotone}, {"max_norm_defect", worst_norm}};
}

json run_resonance(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const double g = num(cfg, "g"), gamma0 = num(cfg, "gamma0");
  if (!(gamma0 > 0.0) || g < 0.0) throw InvalidInput("resonance: need g >= 0, gamma0 > 0");
  const TwoLevelInit init = init_state(cfg);
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  Trajectory full;
  Trajectory reduced = reduced_three_level_trajectory(resonance_gksl_model(g, gamma0), init, times, &full);
  std::vector<Matrix> closed;
  for (double t : times) closed.push_back(resonance_rho_s(g, gamma0, init, t));
  write_csv(ctx, reduced);
  const double diff = sup_diff(reduced.states, closed);
  const std::size_t invalid = count_invalid(full.states, cfg.tol, true) + count_invalid(reduced.states, cfg.tol, true);
  ctx.require(diff <= 1e-9, "propagated vs closed form differ by " + std::to_string(diff));
  ctx.require(invalid == 0, std::to_string(invalid) + " states fail density-matrix validation");
  const ResonanceParams rp = ResonanceParams::from_markov_rate(g, gamma0);
  const Complex delta = rp.delta();
  return {{"sup_difference_closed_form", diff},
          {"gamma", rp.gamma},
          {"delta_re", delta.real()},
          {"delta_im", delta.imag()},
          {"regime", rp.oscillatory() ? "oscillatory" : "relaxation"},
          {"invalid_states", invalid}};
}

json run_van_hove(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const TwoLevelInit init = init_state(cfg);
  const auto lambdas = lambda_ladder(cfg);
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  const auto rows = van_hove_sweep(num(cfg, "g"), num(cfg, "gamma0"), init, lambdas, times);
  write_rows_csv(ctx, rows);
  const bool monotone = strictly_decreasing(errors_of(rows));
  ctx.require(monotone, "Van Hove error is not monotone along the lambda ladder");
  return {{"rows", rows_json(rows)}, {"monotone", monotone}};
}

json run_finite_temp(Context& ctx) {
  const RunConfig& cfg = ctx.cfg;
  const TwoLevelInit init = init_state(cfg);
  const FiniteTempParams p{num(cfg, "g"), num(cfg, "gamma0"), num(cfg, "n")};
  const auto lambdas = lambda_ladder(cfg);
  const auto times = uniform_grid(cfg.t_max, cfg.points);
  std::vector<Matrix> states;
  const auto rows = finite_temp_sweep(p, init, lambdas, times, &states);
  write_rows_csv(ctx, rows);
  const bool monotone = strictly_decreasing(errors_of(rows));
  const std::size_t invalid = count_invalid(states, cfg.tol, true);
  ctx.require(monotone, "finite-temperature error is not monotone along the lambda ladder");
  ctx.require(invalid == 0, std::to_string(invalid) + " states fail density-matrix validation");
  return {{"rows", rows_json(rows)},
          {"monotone", monotone},
          {"stationary_rho11", p.n / (1.0 + 2.0 * p.n)},
          {"invalid_states", invalid}};
}

json fmo_json(const RunConfig& cfg) {
  const FMOParams p{num(cfg, "omega0"), num(cfg, "beta_inv"), num(cfg, "S"), num(cfg, "gamma0_half")};
  const FMOReport r = fmo_derive(p);
  return {{"cm-1",
           {{"g", r.g},
            {"gamma0", r.gamma0},
            {"gamma0_half", p.gamma0_half},
            {"gamma", r.gamma},
            {"gamma_quarter", r.gamma_quarter},
            {"abs_delta", r.abs_delta}}},
          {"ps",
           {{"coherence_lifetime_ps", r.coherence_lifetime_ps},
            {"markov_lifetime_fs", r.markov_lifetime_fs},
            {"population_period_ps", r.population_period_ps},
            {"gamma_quarter_rate_per_ps", wavenumber_to_rate(r.gamma_quarter)},
            {"gamma0_half_rate_per_ps", wavenumber_to_rate(p.gamma0_half)}}},
          {"n", r.n},
          {"regime", r.oscillatory ? "oscillatory" : "relaxation"}};
}

json run_single(Context& ctx) {
  switch (ctx.cfg.scenario) {
    case Scenario::NonHermitian:
      return run_nonhermitian(ctx);
    case Scenario::GkslEquivalence:
      return run_gksl_equivalence(ctx);
    case Scenario::Pseudomode:
      return run_pseudomode(ctx);
    case Scenario::FriedrichsConvergence:
      return run_friedrichs(ctx);
    case Scenario::Resonance:
      return run_resonance(ctx);
    case Scenario::VanHoveSweep:
      return run_van_hove(ctx);
    case Scenario::FiniteTemp:
      return run_finite_temp(ctx);
    case Scenario::Fmo:
      return fmo_json(ctx.cfg);
  }
  throw Error("unhandled scenario");
}

RunResult run_one(const RunConfig& cfg, const RunOptions& opts, const std::string& stem) {
  Context ctx{cfg, opts.out_dir, stem, opts.check, {}};
  json summary;
  try {
    summary = run_single(ctx);
  } catch (const InvariantFailure&) {
    throw;
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw InvalidInput(scenario_name(cfg.scenario) + ": " + e.what());
  }
  summary["scenario"] = scenario_name(cfg.scenario);
  summary["config_hash"] = cfg.config_hash;
  summary["tolerances"] = tolerances_json(cfg.tol);
  summary["kernels"] = std::string(kernels::backend_name(kernels::active().backend));
  if (cfg.scenario != Scenario::Fmo) summary["grid"] = {{"t_max", cfg.t_max}, {"points", cfg.points}};
  {
    auto os = ctx.open(".json");
    os << summary.dump(2) << '\n';
  }
  return {std::move(ctx.files), std::move(summary)};
}

std::string format_value(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
  std::filesystem::create_directories(opts.out_dir);
  const bool ladder = cfg.sweep && cfg.sweep->parameter == "lambda";
  if (!cfg.sweep || ladder) return run_one(cfg, opts, cfg.output_stem);

  // One output file set per sweep value, entries evaluated concurrently.
  std::vector<RunConfig> entries;
  std::vector<std::string> stems;
  for (double v : cfg.sweep->values) {
    RunConfig c = cfg;
    c.params[cfg.sweep->parameter] = v;
    c.sweep.reset();
    entries.push_back(std::move(c));
    stems.push_back(cfg.output_stem + "_" + cfg.sweep->parameter + "=" + format_value(v));
  }
  std::vector<std::future<RunResult>> futures;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    futures.push_back(std::async(std::launch::async, [&, i] { return run_one(entries[i], opts, stems[i]); }));
  }
  RunResult total;
  total.summary = json::array();
  for (std::size_t i = 0; i < futures.size(); ++i) {
    RunResult r = futures[i].get();
    total.files.insert(total.files.end(), r.files.begin(), r.files.end());
    r.summary["sweep"] = {{"parameter", cfg.sweep->parameter}, {"value", cfg.sweep->values[i]}};
    total.summary.push_back(std::move(r.summary));
  }
  return total;
}

json fmo_report(const RunConfig& cfg) {
  if (cfg.scenario != Scenario::Fmo) throw ConfigError("fmo-report needs a config with scenario \"fmo\"");
  json j = fmo_json(cfg);
  j["scenario"] = "fmo";
  j["config_hash"] = cfg.config_hash;
  return j;
}

}  // namespace openq::cli
