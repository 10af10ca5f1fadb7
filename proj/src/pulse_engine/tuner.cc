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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

#include <boost/math/tools/roots.hpp>

#include "nvgate/errors.h"
#include "nvgate/pulse_engine.h"

namespace nvgate {

namespace {

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  return r <= -kPi ? r + kTwoPi : r;
}

// First-order conditional phase of a section: |f| A_perp T / 4.
double first_order_phase(double f, double a_perp, int blocks, double tau) {
  return std::abs(f) * a_perp * 8.0 * blocks * tau / 4.0;
}

class SectionModel {
 public:
  SectionModel(const RegisterConfig& reduced, GatePlan plan, double beta,
               double width)
      : reduced_(reduced),
        plan_(std::move(plan)),
        beta_(beta),
        width_(width),
        sim_(reduced, ErrorModel{}),
        w_(register_frame_rotation(reduced)),
        precession_(free_precession_hamiltonian(reduced)) {
    plan_.target = 0;
  }

  // nullopt when f leaves the valid spacing range of the branch.
  std::optional<ConditionalRotation> evaluate(double f, double psi,
                                              const SpacingBranch& branch) {
    double x2;
    if (!spacing_x2(plan_.harmonic, plan_.x1, f, branch, &x2)) return std::nullopt;
    if (!(plan_.x1 < x2 && x2 < 0.25) || unit_min_gap(plan_.x1, x2) < width_) {
      return std::nullopt;
    }
    plan_.x2 = x2;
    plan_.frame_phase = psi;
    const SequencePlan s = gate_schedule(plan_, reduced_);
    const Operator u = sim_.propagator(s);
    const Operator frame =
        w_ * precession_.propagator(-s.duration) * u * w_.adjoint();
    return analyze_conditional(frame, beta_);
  }

 private:
  RegisterConfig reduced_;
  GatePlan plan_;
  double beta_;
  double width_;
  PulseSimulator sim_;
  Operator w_;
  HermitianEvolution precession_;
};

// Root of angle(f) = target inside [lo, hi] (either order).
double solve_fourier(SectionModel& model, double psi,
                     const SpacingBranch& branch, double target, double lo,
                     double hi) {
  if (lo > hi) std::swap(lo, hi);
  auto g = [&](double f) {
    auto r = model.evaluate(f, psi, branch);
    if (!r) throw SynthesisError("spacing left its valid range", 0.0);
    return r->angle - target;
  };
  double glo = g(lo);
  double ghi = g(hi);
  if (glo * ghi > 0.0) {
    const double best = std::abs(glo) < std::abs(ghi) ? glo : ghi;
    throw SynthesisError("conditional phase not bracketed by the spacing range",
                         best + target);
  }
  std::uintmax_t iters = 100;
  boost::math::tools::eps_tolerance<double> tol(48);
  auto r = boost::math::tools::toms748_solve(g, lo, hi, glo, ghi, tol, iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace

GatePlan tune_sequence(const RegisterConfig& cfg, int j, double target_phase,
                       int k, int max_blocks, const TunerOptions& options,
                       Axis axis) {
  cfg.validate();
  if (j < 0 || j >= cfg.num_nuclei()) throw SpecError("target outside register");
  if (axis == Axis::kZ) throw SpecError("decoupling gates need an x or y axis");
  if (!(target_phase > 0.0 && target_phase < kPi)) {
    throw SpecError("target phase must lie in (0, pi)");
  }
  if (max_blocks < 1) throw SpecError("max_blocks must be positive");

  const double omega = effective_nuclear_frequency(cfg, j).magnitude;
  const double tau = resonance_period(cfg, j, k);
  const double a_perp = perpendicular_hyperfine(cfg, j).norm();
  if (!(a_perp > 0.0)) {
    throw SynthesisError("nucleus has no transverse hyperfine coupling", 0.0);
  }
  const double width = cfg.t_pi() / (2.0 * tau);
  const double f_max = 20.0 / (kPi * k);

  // Coarse stage: integer block count at the operating Fourier coefficient,
  // then the spacing with the widest clearance for the required |f_k|.
  int blocks = std::max(
      1, static_cast<int>(std::lround(target_phase /
                                      first_order_phase(options.operating_fourier,
                                                        a_perp, 1, tau))));
  std::optional<SpacingChoice> choice;
  int sign = 1;
  for (; blocks <= max_blocks; ++blocks) {
    const double f_need = target_phase / first_order_phase(1.0, a_perp, blocks, tau);
    for (int s : {1, -1}) {
      try {
        SpacingChoice c = select_spacing(k, width, s * f_need, options.gap_margin,
                                         options.width_grid);
        if (!choice || c.min_gap > choice->min_gap) {
          choice = c;
          sign = s;
        }
      } catch (const SynthesisError&) {
      }
    }
    if (choice) break;
  }
  if (!choice) {
    throw SynthesisError("target phase unreachable within max_blocks",
                         first_order_phase(f_max, a_perp, max_blocks, tau));
  }

  const double beta = axis == Axis::kY ? kPi / 2 : 0.0;
  GatePlan plan;
  plan.target = j;
  plan.axis = axis;
  plan.target_phase = target_phase;
  plan.harmonic = k;
  plan.tau = tau;
  plan.blocks = blocks;
  plan.x1 = choice->x1;
  plan.x2 = choice->x2;
  plan.omega = omega;
  double psi = beta + (sign > 0 ? kPi : 0.0);

  // Fine stage on the exactly simulated electron + target register.
  SectionModel model(single_nucleus_register(cfg, j), plan, beta, width);
  const SpacingBranch branch = choice->branch;
  const double f0 = sign * target_phase / first_order_phase(1.0, a_perp, blocks, tau);
  double f = solve_fourier(model, psi, branch, target_phase, 0.9 * f0, 1.1 * f0);
  for (int it = 0; it < options.axis_iterations; ++it) {
    auto r = model.evaluate(f, psi, branch);
    psi -= wrap_angle(r->axis_angle - beta);
    f = solve_fourier(model, psi, branch, target_phase, 0.98 * f, 1.02 * f);
  }
  const auto final_rot = model.evaluate(f, psi, branch);
  spacing_x2(k, plan.x1, f, branch, &plan.x2);
  plan.frame_phase = wrap_angle(psi);
  plan.fourier = axy_fourier(k, plan.x1, plan.x2);
  plan.achieved_phase = final_rot->angle;
  plan.axis_error = wrap_angle(final_rot->axis_angle - beta);
  if (std::abs(plan.achieved_phase - target_phase) > options.tolerance) {
    throw SynthesisError("tuner did not converge", plan.achieved_phase);
  }

  plan.frame_shifts.assign(cfg.num_nuclei(), 0.0);
  if (options.calibrate_frame_shifts) {
    const Operator frame = section_frame_propagator(plan, cfg, ErrorModel{});
    plan.frame_shifts = measure_frame_shifts(frame, j, beta, cfg.layout());
  }
  return plan;
}

}  // namespace nvgate
