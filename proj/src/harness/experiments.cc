// Copyright 2026 The nvgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <map>

#include "nvgate/errors.h"
#include "nvgate/harness.h"

namespace nvgate {

namespace {

constexpr double kDeg = kPi / 180.0;

StateVector electron_state(const std::string& label) {
  const double h = 1.0 / std::sqrt(2.0);
  StateVector e(2);
  if (label == "x+") {
    e << h, h;
  } else if (label == "x-") {
    e << h, -h;
  } else if (label == "y+") {
    e << h, Complex(0.0, h);
  } else if (label == "y-") {
    e << h, Complex(0.0, -h);
  } else if (label == "z+" || label == "1") {
    e << 1.0, 0.0;
  } else if (label == "z-" || label == "0") {
    e << 0.0, 1.0;
  } else {
    throw SpecError("unknown electron state '" + label + "'");
  }
  return e;
}

StateVector bloch_vector(const BlochState& b) {
  StateVector v(2);
  v << std::cos(0.5 * b.theta), std::polar(std::sin(0.5 * b.theta), b.phi);
  return v;
}

double expect_z_string(const StateVector& psi, const std::vector<int>& nuclei,
                       const Layout& layout) {
  std::map<int, char> axes;
  for (int n : nuclei) axes[n + 1] = 'z';
  return expectation(psi, pauli_string(axes, layout));
}

RecipeSpec with_phase(RecipeSpec r, double phase) {
  r.central_phase = phase;
  return r;
}

}  // namespace

StateVector initial_frame_state(const std::string& electron,
                                const std::vector<BlochState>& nuclei) {
  Operator psi = electron_state(electron);
  for (const auto& b : nuclei) psi = kron(psi, bloch_vector(b));
  return psi.col(0);
}

StateVector ghz_target(int nuclei, double phase) {
  const Layout layout = register_layout(nuclei);
  std::map<int, char> axes{{0, 'y'}};
  for (int n = 0; n < nuclei; ++n) axes[n + 1] = 'x';
  const Operator g = pauli_string(axes, layout);
  const StateVector psi0 =
      initial_frame_state("y+", std::vector<BlochState>(nuclei, BlochState{}));
  return std::cos(phase) * psi0 + kI * std::sin(phase) * (g * psi0);
}

std::vector<GatePlan> synthesize_plans(const ScenarioConfig& cfg,
                                       const std::vector<GateSpec>& gates) {
  std::vector<GatePlan> plans;
  for (const auto& g : gates) {
    bool have = false;
    for (const auto& p : plans) {
      have |= p.target == g.target && p.axis == g.axis &&
              std::abs(p.target_phase - g.phase) < 1e-12;
    }
    if (have) continue;
    if (g.target < 0 || g.target >= cfg.reg.num_nuclei()) {
      throw SpecError("gate target outside register");
    }
    plans.push_back(tune_sequence(cfg.reg, g.target, g.phase,
                                  cfg.harmonics.at(g.target), cfg.max_blocks,
                                  cfg.tuner, g.axis));
  }
  return plans;
}

StateVector run_recipe(const ScenarioConfig& cfg, const RecipeSpec& recipe,
                       const std::vector<GatePlan>& plans,
                       const ErrorModel& error, const StateVector& frame_state,
                       SequencePlan* schedule_out) {
  const SequencePlan sched = recipe_schedule(recipe, plans, cfg.reg,
                                             cfg.section_order, cfg.track_frames);
  const Operator w = register_frame_rotation(cfg.reg);
  const StateVector lab = simulate(sched, cfg.reg, error, w.adjoint() * frame_state);
  if (schedule_out) *schedule_out = sched;
  return comparison_frame(cfg.reg, sched.duration, sched.frame_shifts) * lab;
}

std::vector<Figure1Row> run_figure1(const ScenarioConfig& cfg,
                                    const std::vector<GatePlan>& plans,
                                    int jobs) {
  const Layout layout = cfg.reg.layout();
  const StateVector psi0 = initial_frame_state(cfg.initial_electron, cfg.initial_nuclei);
  std::vector<int> targets;
  for (const auto& g : cfg.recipe.gates) targets.push_back(g.target);
  const std::vector<int> first{targets.front()};
  ErrorModel error = cfg.error;
  error.rng_seed = cfg.seed;

  std::vector<Figure1Row> rows(cfg.figure1_phi_over_pi.size());
  parallel_for(static_cast<int>(rows.size()), jobs, [&](int i) {
    const double x = cfg.figure1_phi_over_pi[i];
    const RecipeSpec recipe = with_phase(cfg.recipe, x * kPi);
    const StateVector ideal = compose_recipe(recipe, layout) * psi0;
    const StateVector sim = run_recipe(cfg, recipe, plans, error, psi0);
    rows[i] = {x, expect_z_string(ideal, first, layout),
               expect_z_string(ideal, targets, layout),
               expect_z_string(sim, first, layout),
               expect_z_string(sim, targets, layout)};
  });
  return rows;
}

GhzResult run_ghz(const ScenarioConfig& cfg, const std::vector<GatePlan>& plans) {
  const int n = cfg.reg.num_nuclei();
  const StateVector psi0 = initial_frame_state(cfg.initial_electron, cfg.initial_nuclei);
  const StateVector target = ghz_target(n, cfg.ghz_phase);
  const RecipeSpec recipe = with_phase(cfg.recipe, cfg.ghz_phase);

  ErrorModel error = cfg.error;
  error.phase_jitter = 0.0;
  error.rng_seed = cfg.seed;
  SequencePlan sched;
  const StateVector out = run_recipe(cfg, recipe, plans, error, psi0, &sched);
  const StateVector clean = run_recipe(cfg, recipe, plans, ErrorModel{}, psi0);

  GhzResult r;
  r.fidelity = state_fidelity(target, out);
  r.ideal_limit_fidelity = state_fidelity(target, clean);
  r.gate_level_fidelity =
      state_fidelity(target, compose_recipe(recipe, cfg.reg.layout()) * psi0);
  r.pulses = sched.pulse_count();
  r.duration = sched.duration;
  r.norm_error = std::max(std::abs(out.norm() - 1.0), std::abs(clean.norm() - 1.0));
  return r;
}

std::vector<SweepRow> run_phase_sweep(const ScenarioConfig& cfg,
                                      const std::vector<GatePlan>& plans,
                                      int jobs) {
  const int n = cfg.reg.num_nuclei();
  const StateVector psi0 = initial_frame_state(cfg.initial_electron, cfg.initial_nuclei);
  const StateVector target = ghz_target(n, cfg.ghz_phase);
  const RecipeSpec recipe = with_phase(cfg.recipe, cfg.ghz_phase);
  const double ideal =
      state_fidelity(target, compose_recipe(recipe, cfg.reg.layout()) * psi0);
  const int points = static_cast<int>(cfg.sweep_theta_deg.size());
  const int runs = cfg.runs;

  // Sample r of every grid point draws from stream r, so the points share
  // their random numbers.
  std::vector<double> fid(static_cast<std::size_t>(points) * runs, 0.0);
  parallel_for(points * runs, jobs, [&](int idx) {
    const int p = idx / runs;
    const int r = idx % runs;
    ErrorModel error = cfg.error;
    error.phase_jitter = cfg.sweep_theta_deg[p] * kDeg;
    error.rng_seed = cfg.seed;
    error.stream = static_cast<std::uint64_t>(r);
    if (error.phase_jitter == 0.0 && r > 0) return;
    fid[idx] = state_fidelity(target, run_recipe(cfg, recipe, plans, error, psi0));
  });

  std::vector<SweepRow> rows;
  for (int p = 0; p < points; ++p) {
    double* f = fid.data() + static_cast<std::size_t>(p) * runs;
    if (cfg.sweep_theta_deg[p] == 0.0) {
      // Every run is the same deterministic one.
      rows.push_back({0.0, ideal, f[0], 0.0, runs});
      continue;
    }
    double mean = 0.0;
    for (int r = 0; r < runs; ++r) mean += f[r];
    mean /= runs;
    double var = 0.0;
    for (int r = 0; r < runs; ++r) var += (f[r] - mean) * (f[r] - mean);
    const double se = runs > 1 ? std::sqrt(var / (runs - 1) / runs) : 0.0;
    rows.push_back({cfg.sweep_theta_deg[p], ideal, mean, se, runs});
  }
  return rows;
}

bool sweep_non_increasing(const std::vector<SweepRow>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double slack = 2.0 * std::hypot(rows[i - 1].std_error, rows[i].std_error);
    if (rows[i].mean > rows[i - 1].mean + slack) return false;
  }
  return true;
}

Operator z_to_x_rotation() { return exp_i(pauli('y'), -kPi / 4); }

CorrelatorResult run_correlator(const ScenarioConfig& cfg) {
  const int nuclei = cfg.reg.num_nuclei();
  const int n = static_cast<int>(cfg.correlator_targets.size());

  Operator psi_n = Operator::Ones(1, 1);
  for (const auto& b : cfg.correlator_nuclei) psi_n = kron(psi_n, bloch_vector(b));
  const DensityOperator rho_n = projector(psi_n.col(0));

  CorrelatorResult r;
  r.truth = correlator_truth(rho_n, cfg.correlator_targets, cfg.correlator_axes);
  r.ideal = correlator_readout(rho_n, cfg.correlator_targets, cfg.correlator_axes);

  // z factors are read through an x gate on a pre-rotated nucleus.
  RecipeSpec recipe;
  Operator prep = identity(1);
  std::vector<bool> rotate(nuclei, false);
  for (int t = 0; t < n; ++t) {
    const int j = cfg.correlator_targets[t];
    Axis a = cfg.correlator_axes[t];
    if (a == Axis::kZ) {
      rotate[j] = true;
      a = Axis::kX;
    }
    recipe.gates.push_back({j, a, kPi / 2});
  }
  for (int j = 0; j < nuclei; ++j) {
    prep = kron(prep, rotate[j] ? z_to_x_rotation() : identity(2));
  }
  recipe.central_phase = correlator_phase(n / 2);
  recipe.central_axis = Axis::kX;

  const StateVector psi0 = kron(electron_state("1"), prep * psi_n.col(0)).col(0);
  const std::vector<GatePlan> plans = synthesize_plans(cfg, recipe.gates);
  ErrorModel error = cfg.error;
  error.rng_seed = cfg.seed;
  const StateVector out = run_recipe(cfg, recipe, plans, error, psi0);
  const char measured = (n % 2 == 0) ? 'y' : 'x';
  r.pulse_level = expectation(out, embed(pauli(measured), 0, cfg.reg.layout()));
  return r;
}

bool IdentityReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return !checks.empty();
}

IdentityReport run_verify(const ScenarioConfig& cfg) {
  return {verify_identities(cfg.seed, cfg.verify_instances)};
}

}  // namespace nvgate
