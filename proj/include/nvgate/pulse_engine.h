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

// AXY-8 schedule synthesis and piecewise-exact propagation.
//
// Times inside a decoupling period 2 tau are often written in units of that
// period ("unit positions"). One period holds two composite pulses whose five
// pi-pulse centers sit at x1, x2, 1/4, 1/2 - x2, 1/2 - x1 and the same shifted
// by 1/2.

#ifndef NVGATE_PULSE_ENGINE_H_
#define NVGATE_PULSE_ENGINE_H_

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "nvgate/gate_algebra.h"
#include "nvgate/operator_core.h"
#include "nvgate/register_model.h"

namespace nvgate {

struct PulseEvent {
  double t_start = 0.0;   // s
  double duration = 0.0;  // s
  double axis_phase = 0.0;  // rad, control phase
  double amplitude_scale = 1.0;
};

inline constexpr std::array<double, 5> kKnillPhases = {kPi / 6, 0.0, kPi / 2,
                                                       0.0, kPi / 6};
inline constexpr char kAxy8Pattern[] = "XYXYYXYX";

// Five pi-pulses mirrored about the central one. Offsets are relative to the
// composite center: -t2, -t1, 0, t1, t2.
struct CompositePulse {
  Axis base_axis = Axis::kX;
  double t1 = 0.0;
  double t2 = 0.0;

  std::array<double, 5> offsets() const;
  std::array<double, 5> phases() const;
};

// A tuned Q_j^axis(phase) realization.
struct GatePlan {
  int target = 0;
  Axis axis = Axis::kX;
  double target_phase = kPi / 2;
  int harmonic = 1;
  double tau = 0.0;  // s, composite-to-composite spacing
  int blocks = 0;
  double x1 = 0.0;
  double x2 = 0.0;
  double fourier = 0.0;      // f_k of the unit
  double omega = 0.0;        // |omega_j|, rad/s
  double frame_phase = 0.0;  // lattice phase omega_j * anchor
  double achieved_phase = 0.0;
  double axis_error = 0.0;
  // z rotation of each nucleus in its frame accumulated over one section.
  std::vector<double> frame_shifts;

  int pulse_count() const { return 40 * blocks; }
  double duration() const { return 8.0 * blocks * tau; }
  double block_time() const { return 8.0 * tau; }
  CompositePulse composite(Axis base) const;
};

// A timed list of events. frame_shifts is the tracked z rotation of every
// nucleus accumulated by the end of the plan.
struct SequencePlan {
  std::vector<PulseEvent> events;
  double duration = 0.0;
  std::vector<double> frame_shifts;
  std::vector<std::pair<int, int>> sections;  // (target, first event index)

  int pulse_count() const { return static_cast<int>(events.size()); }
};

enum class SectionOrder { kPalindrome, kRepeat };
enum class JitterDistribution { kUniform, kBinary };
// kPerPulse draws for every event; kPerSetting draws once per distinct
// nominal control phase and keeps it for the whole run.
enum class JitterScope { kPerPulse, kPerSetting };

struct ErrorModel {
  double rabi_error = 0.0;
  bool detuning_on = false;
  double phase_jitter = 0.0;  // rad
  JitterDistribution distribution = JitterDistribution::kUniform;
  JitterScope scope = JitterScope::kPerPulse;
  std::uint64_t rng_seed = 0;
  std::uint64_t stream = 0;  // Monte Carlo sample index
};

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}
  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const;
  double uniform01(std::uint64_t stream, std::uint64_t counter) const;
  // Uniform on [-1, 1).
  double symmetric(std::uint64_t stream, std::uint64_t counter) const;

 private:
  std::uint64_t seed_;
};

// tau = k pi / |omega_j|.
double resonance_period(const RegisterConfig& cfg, int j, int k);

// The ten flip positions of one period, sorted.
std::array<double, 10> unit_positions(double x1, double x2);

// F(t) under the ideal instantaneous-pulse picture.
struct ModulationFunction {
  std::vector<double> flips;  // s
  double duration = 0.0;

  int value(double t) const;
  // Exact integral of F over [a, b].
  double integral(double a, double b) const;
};

ModulationFunction modulation_function(const SequencePlan& plan);

// f_k = 2 int_0^1 F(u) cos(2 pi k u) du for F of unit period starting at +1
// and flipping at the given sorted positions in [0, 1).
double fourier_coefficient(const std::vector<double>& flips, int k);

// Same for a gate plan's unit.
double fourier_coefficient(const GatePlan& plan, int k);

// Closed form for odd k.
double axy_fourier(int k, double x1, double x2);

// x2 as a function of (x1, f) along one solution branch of
// sin(2 pi k x2) = (C(x1) - f) pi k / 8.
struct SpacingBranch {
  bool reflected = false;
  int wrap = 0;
};

struct SpacingChoice {
  double x1 = 0.0;
  double x2 = 0.0;
  double min_gap = 0.0;
  SpacingBranch branch;
};

// Spacing of the ten pulses of a period reaching Fourier coefficient f, with
// the largest minimum gap between neighbouring pulse centers. width is the
// pulse duration in units of the period; margin is the extra clearance kept
// between pulses and at section edges. Throws SynthesisError if none.
SpacingChoice select_spacing(int k, double width, double f,
                             double margin = 1e-3, int grid = 4001);

// Returns false when the branch has no solution for this f.
bool spacing_x2(int k, double x1, double f, const SpacingBranch& branch,
                double* x2);

// Smallest gap between neighbouring flips of a unit.
double unit_min_gap(double x1, double x2);

// Lattice origin a with omega a = frame_phase (mod 2 pi) closest to t.
double lattice_anchor(double frame_phase, double omega, double t);

// Pulses of one gate section inside [t_start, t_start + duration].
std::vector<PulseEvent> section_events(const GatePlan& plan, double t_start,
                                       double frame_phase, double t_pi);

// Single electron rotation exp(i angle (cos a sigma_x + sin a sigma_y) / 2)
// as one top-hat pulse. The angle is reduced into (-pi, pi]; a vanishing
// angle is realized as a 2 pi pulse.
PulseEvent rotation_event(double angle, double axis_phase, double t_start,
                          double t_pi);

// Schedule for one section of a plan starting at t = 0.
SequencePlan gate_schedule(const GatePlan& plan, const RegisterConfig& cfg);

// X_pi, Q sections, the central rotation and the Q sections again, with the
// section anchors shifted by the tracked frame rotations.
SequencePlan recipe_schedule(const RecipeSpec& recipe,
                             const std::vector<GatePlan>& plans,
                             const RegisterConfig& cfg,
                             SectionOrder order = SectionOrder::kPalindrome,
                             bool track_frames = true);

// Exact propagation of a plan. Pulse propagators are cached per
// (duration, amplitude) with the control phase applied by conjugation with
// the electron z rotation, which commutes with the static Hamiltonian.
class PulseSimulator {
 public:
  PulseSimulator(const RegisterConfig& cfg, const ErrorModel& error,
                 bool use_cache = true);

  Operator propagator(const SequencePlan& plan) const;
  StateVector evolve(const SequencePlan& plan, const StateVector& psi) const;

  const Operator& static_hamiltonian() const { return h_static_; }
  int dim() const { return dim_; }

 private:
  Operator base_pulse(double duration, double amplitude_scale) const;
  double event_phase(const PulseEvent& e, std::size_t index) const;
  void check_order(double t, const PulseEvent& e) const;

  RegisterConfig cfg_;
  ErrorModel error_;
  bool use_cache_;
  int dim_;
  Operator h_static_;
  HermitianEvolution free_;
  Eigen::VectorXd z_signs_;
  CounterRng rng_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<double, double>, Operator> cache_;
};

Operator realized_propagator(const SequencePlan& plan,
                             const RegisterConfig& cfg,
                             const ErrorModel& error);

StateVector simulate(const SequencePlan& plan, const RegisterConfig& cfg,
                     const ErrorModel& error, const StateVector& initial);

// prod_m exp(-i shift_m I^z_m), identity on the electron.
Operator frame_shift_operator(const std::vector<double>& shifts,
                              const Layout& layout);

// Maps lab-frame results after a plan of the given duration to the frame in
// which the ideal gates are defined: Z(shifts)^dagger W U_0(T)^dagger.
Operator comparison_frame(const RegisterConfig& cfg, double duration,
                          const std::vector<double>& shifts);

// Conditional rotation read off a 4x4 electron (x) nucleus operator u =
// |1><1| V1 + |0><0| V0. angle is the rotation angle of V0^dagger V1 (the
// phase phi of exp(i phi sigma_z n.I)), axis_angle its azimuth and self_shift
// the extra z rotation common to both branches. reference_axis fixes the
// sign ambiguity of the SU(2) lift.
struct ConditionalRotation {
  double angle = 0.0;
  double axis_angle = 0.0;
  double axis_tilt = 0.0;  // polar distance from the xy plane
  double self_shift = 0.0;
};

ConditionalRotation analyze_conditional(const Operator& u,
                                        double reference_axis);

// Per-nucleus z rotations of a frame propagator on the full register; the
// target's value is its self shift.
std::vector<double> measure_frame_shifts(const Operator& frame_u, int target,
                                         double reference_axis,
                                         const Layout& layout);

struct TunerOptions {
  double operating_fourier = 0.224;
  double tolerance = 1e-4;  // rad
  int axis_iterations = 3;
  int width_grid = 4001;
  double gap_margin = 1e-3;  // unit-period margin on pulse spacing
  bool calibrate_frame_shifts = true;
};

// Chooses blocks and spacing so that one section realizes
// Q_j^axis(target_phase) with errors off. Throws SynthesisError.
GatePlan tune_sequence(const RegisterConfig& cfg, int j, double target_phase,
                       int k, int max_blocks,
                       const TunerOptions& options = TunerOptions(),
                       Axis axis = Axis::kX);

// Frame-propagator of one section of the plan on the full register.
Operator section_frame_propagator(const GatePlan& plan,
                                  const RegisterConfig& cfg,
                                  const ErrorModel& error);

// Plain-text schedule: '#' header lines then
// "t_start_ns duration_ns phase_rad amplitude_scale" per event.
std::string serialize_schedule(const SequencePlan& plan,
                               const std::string& config_hash);
SequencePlan parse_schedule(const std::string& text);

}  // namespace nvgate

#endif  // NVGATE_PULSE_ENGINE_H_
