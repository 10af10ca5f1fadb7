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

#include "nvgate/errors.h"
#include "nvgate/pulse_engine.h"

namespace nvgate {

namespace {

std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RegisterConfig with_errors(RegisterConfig cfg, const ErrorModel& error) {
  cfg.include_detuning = error.detuning_on;
  cfg.rabi_error = error.rabi_error;
  return cfg;
}

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  return r <= -kPi ? r + kTwoPi : r;
}

}  // namespace

std::uint64_t CounterRng::bits(std::uint64_t stream,
                               std::uint64_t counter) const {
  std::uint64_t z = splitmix(seed_);
  z = splitmix(z ^ (stream * 0xd1b54a32d192ed03ULL));
  return splitmix(z ^ (counter * 0x8cb92ba72f3d8dd7ULL));
}

double CounterRng::uniform01(std::uint64_t stream,
                             std::uint64_t counter) const {
  return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
}

double CounterRng::symmetric(std::uint64_t stream,
                             std::uint64_t counter) const {
  return 2.0 * uniform01(stream, counter) - 1.0;
}

PulseSimulator::PulseSimulator(const RegisterConfig& cfg,
                               const ErrorModel& error, bool use_cache)
    : cfg_(with_errors(cfg, error)),
      error_(error),
      use_cache_(use_cache),
      dim_(cfg.dim()),
      h_static_(build_static_hamiltonian(cfg_)),
      free_(h_static_),
      z_signs_(dim_),
      rng_(error.rng_seed) {
  for (int a = 0; a < dim_; ++a) z_signs_(a) = a < dim_ / 2 ? 1.0 : -1.0;
}

Operator PulseSimulator::base_pulse(double duration,
                                    double amplitude_scale) const {
  auto compute = [&] {
    const double eps = (1.0 + error_.rabi_error) * amplitude_scale - 1.0;
    return nvgate::propagator(h_static_ + build_control_hamiltonian(cfg_, 0.0, eps),
                      duration);
  };
  if (!use_cache_) return compute();
  const auto key = std::make_pair(duration, amplitude_scale);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Operator u = compute();
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, std::move(u)).first->second;
}

double PulseSimulator::event_phase(const PulseEvent& e,
                                   std::size_t index) const {
  if (error_.phase_jitter == 0.0) return e.axis_phase;
  std::uint64_t counter = index;
  if (error_.scope == JitterScope::kPerSetting) {
    // Settings are told apart at the nanoradian level.
    counter = static_cast<std::uint64_t>(std::llround(wrap_angle(e.axis_phase) * 1e9)) |
              (1ULL << 63);
  }
  double u;
  if (error_.distribution == JitterDistribution::kBinary) {
    u = (rng_.bits(error_.stream, counter) & 1ULL) ? 1.0 : -1.0;
  } else {
    u = rng_.symmetric(error_.stream, counter);
  }
  return e.axis_phase + error_.phase_jitter * u;
}

void PulseSimulator::check_order(double t, const PulseEvent& e) const {
  if (!(e.duration > 0.0)) throw ScheduleError("pulse with non-positive duration");
  if (e.t_start < t - 1e-15) throw ScheduleError("overlapping pulses");
}

StateVector PulseSimulator::evolve(const SequencePlan& plan,
                                   const StateVector& psi_in) const {
  if (psi_in.size() != dim_) {
    throw DimensionError("initial state does not match the register");
  }
  StateVector psi = psi_in;
  double t = 0.0;
  for (std::size_t i = 0; i < plan.events.size(); ++i) {
    const PulseEvent& e = plan.events[i];
    check_order(t, e);
    if (e.t_start > t) psi = free_.apply(psi, e.t_start - t);
    const Operator u0 = base_pulse(e.duration, e.amplitude_scale);
    const double phase = event_phase(e, i);
    for (int a = 0; a < dim_; ++a) psi(a) *= std::polar(1.0, -0.5 * z_signs_(a) * phase);
    psi = u0 * psi;
    for (int a = 0; a < dim_; ++a) psi(a) *= std::polar(1.0, 0.5 * z_signs_(a) * phase);
    t = e.t_start + e.duration;
  }
  if (plan.duration > t) psi = free_.apply(psi, plan.duration - t);
  return psi;
}

Operator PulseSimulator::propagator(const SequencePlan& plan) const {
  Operator u = identity(dim_);
  double t = 0.0;
  for (std::size_t i = 0; i < plan.events.size(); ++i) {
    const PulseEvent& e = plan.events[i];
    check_order(t, e);
    if (e.t_start > t) free_.apply_in_place(u, e.t_start - t);
    const Operator u0 = base_pulse(e.duration, e.amplitude_scale);
    const double phase = event_phase(e, i);
    for (int a = 0; a < dim_; ++a) u.row(a) *= std::polar(1.0, -0.5 * z_signs_(a) * phase);
    u = u0 * u;
    for (int a = 0; a < dim_; ++a) u.row(a) *= std::polar(1.0, 0.5 * z_signs_(a) * phase);
    t = e.t_start + e.duration;
  }
  if (plan.duration > t) free_.apply_in_place(u, plan.duration - t);
  return u;
}

Operator realized_propagator(const SequencePlan& plan,
                             const RegisterConfig& cfg,
                             const ErrorModel& error) {
  return PulseSimulator(cfg, error).propagator(plan);
}

StateVector simulate(const SequencePlan& plan, const RegisterConfig& cfg,
                     const ErrorModel& error, const StateVector& initial) {
  return PulseSimulator(cfg, error).evolve(plan, initial);
}

Operator frame_shift_operator(const std::vector<double>& shifts,
                              const Layout& layout) {
  Operator z = identity(layout[0]);
  for (std::size_t m = 1; m < layout.size(); ++m) {
    const double s = m - 1 < shifts.size() ? shifts[m - 1] : 0.0;
    Operator local = Operator::Zero(2, 2);
    local(0, 0) = std::polar(1.0, -0.5 * s);
    local(1, 1) = std::polar(1.0, 0.5 * s);
    z = kron(z, local);
  }
  return z;
}

Operator comparison_frame(const RegisterConfig& cfg, double duration,
                          const std::vector<double>& shifts) {
  return frame_shift_operator(shifts, cfg.layout()).adjoint() *
         register_frame_rotation(cfg) *
         propagator(free_precession_hamiltonian(cfg), -duration);
}

namespace {

struct Su2 {
  double c;
  Vec3 v;
};

// Lift a 2x2 unitary to SU(2), oriented so that v points toward the
// reference axis in the xy plane.
Su2 su2_lift(const Operator& m, double reference_axis) {
  const Complex det = m.determinant();
  const Operator s = m / std::sqrt(det);
  Su2 out;
  out.c = 0.5 * s.trace().real();
  out.v = Vec3(0.5 * (s * pauli('x')).trace().imag(),
               0.5 * (s * pauli('y')).trace().imag(),
               0.5 * (s * pauli('z')).trace().imag());
  const Vec3 ref(std::cos(reference_axis), std::sin(reference_axis), 0.0);
  if (out.v.dot(ref) < 0.0) {
    out.c = -out.c;
    out.v = -out.v;
  }
  return out;
}

}  // namespace

ConditionalRotation analyze_conditional(const Operator& u,
                                        double reference_axis) {
  if (u.rows() != 4 || u.cols() != 4) {
    throw DimensionError("conditional analysis needs a 4x4 operator");
  }
  const Operator v1 = u.block(0, 0, 2, 2);
  const Operator v0 = u.block(2, 2, 2, 2);
  const Su2 a = su2_lift(v0.adjoint() * v1, reference_axis);
  const Su2 b = su2_lift(v1 * v0.adjoint(), reference_axis);
  ConditionalRotation r;
  const double s = a.v.norm();
  r.angle = std::atan2(s, a.c);
  r.axis_angle = std::atan2(a.v.y(), a.v.x());
  r.axis_tilt = s > 0.0 ? std::asin(std::clamp(a.v.z() / s, -1.0, 1.0)) : 0.0;
  r.self_shift = wrap_angle(std::atan2(b.v.y(), b.v.x()) - r.axis_angle);
  return r;
}

std::vector<double> measure_frame_shifts(const Operator& frame_u, int target,
                                         double reference_axis,
                                         const Layout& layout) {
  const int nuclei = static_cast<int>(layout.size()) - 1;
  std::vector<double> out(nuclei, 0.0);
  for (int m = 0; m < nuclei; ++m) {
    if (m == target) {
      out[m] = analyze_conditional(partial_trace(frame_u, {0, m + 1}, layout),
                                   reference_axis)
                   .self_shift;
    } else {
      const Operator k = partial_trace(frame_u, {m + 1}, layout);
      out[m] = std::arg(k(1, 1) / k(0, 0));
    }
  }
  return out;
}

Operator section_frame_propagator(const GatePlan& plan,
                                  const RegisterConfig& cfg,
                                  const ErrorModel& error) {
  const SequencePlan s = gate_schedule(plan, cfg);
  const Operator u = PulseSimulator(cfg, error).propagator(s);
  const Operator w = register_frame_rotation(cfg);
  return w * propagator(free_precession_hamiltonian(cfg), -s.duration) * u *
         w.adjoint();
}

}  // namespace nvgate
