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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "nvgate/harness.h"

namespace nvgate {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool passed;
  std::string detail;
};

StateVector random_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(gen), g(gen));
  return v.normalized();
}

DensityOperator random_density(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(gen), g(gen));
  DensityOperator rho = a * a.adjoint();
  return rho / rho.trace().real();
}

Axis random_axis(std::mt19937_64& gen, bool allow_z = true) {
  return static_cast<Axis>(gen() % (allow_z ? 3 : 2));
}

// 1. Recipe against the closed form.
Outcome criterion1(std::uint64_t seed) {
  const auto t0 = Clock::now();
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(gen() % 5);
    RecipeSpec r;
    r.central_phase = angle(gen);
    r.central_axis = random_axis(gen, false);
    std::vector<int> targets;
    std::vector<Axis> axes;
    for (int j = 0; j < n; ++j) {
      targets.push_back(j);
      axes.push_back(random_axis(gen));
      r.gates.push_back({j, axes.back(), kPi / 2});
    }
    const Layout l = register_layout(n);
    const double f = process_fidelity(compose_recipe(r, l),
                                      closed_form(targets, axes, r.central_phase,
                                                  r.central_axis, l));
    worst = std::max(worst, 1.0 - f);
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 10.0,
          fmt::format("200 instances, max infidelity {:.2e}, {:.2f} s", worst, t)};
}

// 2. Full-space evolution against conditional nuclear propagation.
Outcome criterion2(std::uint64_t seed) {
  std::mt19937_64 gen(seed + 1);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(gen() % 4);
    const Axis central = random_axis(gen, false);
    const double phi = angle(gen);
    std::vector<int> targets;
    std::vector<Axis> axes;
    StateVector nuc = StateVector::Ones(1);
    for (int j = 0; j < n; ++j) {
      targets.push_back(j);
      axes.push_back(random_axis(gen));
      nuc = kron(nuc, random_state(2, gen)).col(0);
    }
    const StateVector e = random_state(2, gen);
    const Layout full = register_layout(n);
    const Layout nl(n, 2);
    const StateVector out = closed_form(targets, axes, phi, central, full) * kron(e, nuc).col(0);

    // Expand the electron on the eigenbasis of the invariant Pauli axis.
    const Operator s = pauli(axis_char(disentangled_electron_axis(n, central)));
    Eigen::SelfAdjointEigenSolver<Operator> es(s);
    StateVector expected = StateVector::Zero(out.size());
    for (int k = 0; k < 2; ++k) {
      const StateVector v = es.eigenvectors().col(k);
      const int branch = es.eigenvalues()(k) > 0 ? 1 : -1;
      const Complex c = v.dot(e);
      expected += c * kron(v, conditional_nuclear_propagator(targets, axes, phi, central,
                                                              branch, nl) *
                                  nuc)
                          .col(0);
    }
    worst = std::max(worst, (out - expected).norm());

    // Single rotation: Q on a sigma_z eigenstate of the electron.
    const GateSpec g{static_cast<int>(gen() % n), random_axis(gen), angle(gen)};
    for (int branch : {1, -1}) {
      StateVector ez = StateVector::Zero(2);
      ez(branch == 1 ? 0 : 1) = 1.0;
      const StateVector a = q_gate(g, full) * kron(ez, nuc).col(0);
      const StateVector b = kron(ez, single_nucleus_rotation(g, branch, nl) * nuc).col(0);
      worst = std::max(worst, (a - b).norm());
    }
  }
  return {worst <= 1e-10, fmt::format("100 product inputs, max deviation {:.2e}", worst)};
}

// 3. Correlator readout against the direct trace.
Outcome criterion3(std::uint64_t seed) {
  std::mt19937_64 gen(seed + 2);
  double worst = 0.0;
  int cases = 0;
  for (int m : {1, 2}) {
    const int n = 2 * m;
    for (int i = 0; i < 50; ++i) {
      const DensityOperator rho = random_density(1 << n, gen);
      std::vector<int> targets;
      std::vector<Axis> axes;
      Operator string = Operator::Ones(1, 1);
      for (int j = 0; j < n; ++j) {
        targets.push_back(j);
        axes.push_back(random_axis(gen));
        string = kron(string, pauli(axis_char(axes.back())));
      }
      const double truth = (rho * string).trace().real();
      worst = std::max(worst, std::abs(correlator_readout(rho, targets, axes) - truth));
      ++cases;
    }
  }
  return {worst <= 1e-10,
          fmt::format("{} random states, M in {{1,2}}, max deviation {:.2e}", cases, worst)};
}

// 4. Synthesized pulse counts and durations.
Outcome criterion4(const ScenarioConfig& cfg, std::vector<GatePlan>* plans) {
  const auto t0 = Clock::now();
  *plans = synthesize_plans(cfg, cfg.recipe.gates);
  const double t = seconds_since(t0);
  const std::vector<int> counts{440, 440, 720};
  const std::vector<double> durations{69e-6, 107e-6, 177e-6};
  bool ok = plans->size() == 3 && t < 60.0;
  std::string detail;
  for (std::size_t j = 0; j < plans->size() && j < 3; ++j) {
    const GatePlan& p = (*plans)[j];
    ok = ok && p.pulse_count() == counts[j] &&
         std::abs(p.duration() / durations[j] - 1.0) <= 0.05;
    if (p.harmonic == 17) ok = ok && std::abs(p.block_time() / 9.8e-6 - 1.0) <= 0.05;
    detail += fmt::format("{}{} pulses/{:.1f} us (block {:.3f} us)", j ? ", " : "",
                          p.pulse_count(), p.duration() * 1e6, p.block_time() * 1e6);
  }
  RecipeSpec r = cfg.recipe;
  r.central_phase = cfg.ghz_phase;
  const int total =
      recipe_schedule(r, *plans, cfg.reg, cfg.section_order, cfg.track_frames).pulse_count();
  ok = ok && total == 3202;
  return {ok, fmt::format("{}; total {}; {:.2f} s", detail, total, t)};
}

// 5. GHZ preparation at pulse level.
Outcome criterion5(const ScenarioConfig& cfg, const std::vector<GatePlan>& plans,
                   GhzResult* out) {
  const auto t0 = Clock::now();
  *out = run_ghz(cfg, plans);
  const double t = seconds_since(t0);
  const bool ok = std::abs(out->fidelity - 0.988) <= 0.005 && out->pulses == 3202 && t < 60.0;
  return {ok, fmt::format("fidelity {:.5f} (0.988 +- 0.005), {} pulses, {:.2f} s",
                          out->fidelity, out->pulses, t)};
}

// 6. <sigma_z> observables against -cos 2 phi.
Outcome criterion6(const ScenarioConfig& cfg, const std::vector<GatePlan>& plans) {
  const auto rows = run_figure1(cfg, plans, 0);
  double dev = 0.0;
  double ideal_dev = 0.0;
  for (const auto& r : rows) {
    const double ideal = -std::cos(2.0 * kPi * r.phi_over_pi);
    ideal_dev = std::max({ideal_dev, std::abs(r.ideal_z1 - ideal), std::abs(r.ideal_z123 - ideal)});
    dev = std::max({dev, std::abs(r.simulated_z1 - ideal), std::abs(r.simulated_z123 - ideal)});
  }
  return {dev <= 0.05 && ideal_dev <= 1e-10,
          fmt::format("{} grid points, max deviation {:.4f} (bound 0.05)", rows.size(), dev)};
}

// 7. Phase-error sweep.
Outcome criterion7(const ScenarioConfig& cfg, const std::vector<GatePlan>& plans,
                   const GhzResult& ghz) {
  const auto t0 = Clock::now();
  const auto rows = run_phase_sweep(cfg, plans, 0);
  const std::string a = sweep_table(rows, cfg).str();
  const std::string b = sweep_table(run_phase_sweep(cfg, plans, 1), cfg).str();
  const double t = seconds_since(t0);
  const bool same_bytes = a == b;
  const bool zero_matches =
      !rows.empty() && rows.front().theta_deg == 0.0 && rows.front().mean == ghz.fidelity;
  const bool monotone = sweep_non_increasing(rows);
  double tightest = 1e9;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double slack = 2.0 * std::hypot(rows[i].std_error, rows[i - 1].std_error) -
                         (rows[i].mean - rows[i - 1].mean);
    tightest = std::min(tightest, slack);
  }
  return {same_bytes && zero_matches && monotone,
          fmt::format("{} points x {} runs, theta=0 {}, non-increasing {} (tightest slack "
                      "{:.4f}), byte-identical {}, {:.1f} s",
                      rows.size(), cfg.runs, zero_matches ? "matches" : "differs",
                      monotone ? "yes" : "no", tightest, same_bytes ? "yes" : "no", t)};
}

// 8. Unitarity, norm conservation and ideal-limit gate fidelity.
Outcome criterion8(const ScenarioConfig& cfg, const std::vector<GatePlan>& plans,
                   const GhzResult& ghz) {
  const int dim = cfg.reg.dim();
  const Operator w = register_frame_rotation(cfg.reg);
  double unitarity = 0.0;
  double min_gate = 1.0;
  for (const auto& p : plans) {
    const SequencePlan s = gate_schedule(p, cfg.reg);
    unitarity = std::max(unitarity, unitarity_error(realized_propagator(s, cfg.reg, cfg.error)));
    const Operator frame = comparison_frame(cfg.reg, s.duration, s.frame_shifts) *
                           realized_propagator(s, cfg.reg, ErrorModel{}) * w.adjoint();
    unitarity = std::max(unitarity, unitarity_error(frame));
    min_gate = std::min(min_gate, process_fidelity(frame, q_gate({p.target, p.axis, p.target_phase},
                                                                 cfg.reg.layout())));
  }
  RecipeSpec r = cfg.recipe;
  r.central_phase = cfg.ghz_phase;
  const SequencePlan sched = recipe_schedule(r, plans, cfg.reg, cfg.section_order, cfg.track_frames);
  ErrorModel noisy = cfg.error;
  noisy.phase_jitter = 5.0 * kPi / 180.0;
  noisy.rng_seed = cfg.seed;
  unitarity = std::max(unitarity, unitarity_error(realized_propagator(sched, cfg.reg, noisy)));

  double norm = ghz.norm_error;
  const StateVector psi0 = initial_frame_state(cfg.initial_electron, cfg.initial_nuclei);
  for (std::uint64_t stream = 0; stream < 4; ++stream) {
    noisy.stream = stream;
    norm = std::max(norm, std::abs(run_recipe(cfg, r, plans, noisy, psi0).norm() - 1.0));
  }
  const bool ok = unitarity <= 1e-9 * dim && norm <= 1e-12 && min_gate >= 0.99;
  return {ok, fmt::format("max unitarity error {:.2e} (dim {}), max norm drift {:.2e}, "
                          "min ideal-limit gate fidelity {:.5f}",
                          unitarity, dim, norm, min_gate)};
}

}  // namespace
}  // namespace nvgate

int main() {
  using namespace nvgate;
  const ScenarioConfig cfg = default_scenario();
  int failures = 0;
  auto report = [&](int n, const Outcome& o) {
    fmt::print("[{}] criterion {}: {}\n", o.passed ? "PASS" : "FAIL", n, o.detail);
    std::fflush(stdout);
    if (!o.passed) ++failures;
  };
  auto guarded = [&](int n, const std::function<Outcome()>& f) {
    try {
      report(n, f());
    } catch (const std::exception& e) {
      report(n, {false, std::string("exception: ") + e.what()});
    }
  };

  std::vector<GatePlan> plans;
  GhzResult ghz;
  guarded(1, [&] { return criterion1(cfg.seed); });
  guarded(2, [&] { return criterion2(cfg.seed); });
  guarded(3, [&] { return criterion3(cfg.seed); });
  guarded(4, [&] { return criterion4(cfg, &plans); });
  if (plans.empty()) {
    for (int n = 5; n <= 8; ++n) report(n, {false, "no synthesized plans"});
    return 1;
  }
  guarded(5, [&] { return criterion5(cfg, plans, &ghz); });
  guarded(6, [&] { return criterion6(cfg, plans); });
  guarded(7, [&] { return criterion7(cfg, plans, ghz); });
  guarded(8, [&] { return criterion8(cfg, plans, ghz); });
  fmt::print("{} of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
