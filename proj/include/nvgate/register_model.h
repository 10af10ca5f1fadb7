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

// NV electron plus 13C register: couplings, Hamiltonians and nuclear frames.

#ifndef NVGATE_REGISTER_MODEL_H_
#define NVGATE_REGISTER_MODEL_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nvgate/operator_core.h"

namespace nvgate {

using Vec3 = Eigen::Vector3d;

namespace constants {

inline constexpr double kGammaC13 = kTwoPi * 1.0705e7;      // rad/s/T
inline constexpr double kGammaE = -kTwoPi * 2.8024e10;      // rad/s/T
inline constexpr double kMu0 = 1.25663706212e-6;            // T m/A
inline constexpr double kHbar = 1.054571817e-34;            // J s
inline constexpr double kApar14N = -kTwoPi * 2.162e6;       // rad/s

}  // namespace constants

// Prefactor of the internuclear dipolar constant.
//   kVerbatim:  hbar mu0 gamma^2 / (2 d^3)
//   kWithFourPi: hbar mu0 gamma^2 / (8 pi d^3)
enum class CouplingConvention { kVerbatim, kWithFourPi };

struct NuclearSpinDesc {
  Vec3 hyperfine = Vec3::Zero();  // rad/s
  std::optional<Vec3> position;   // m, NV at the origin
  bool hyperfine_override = false;
  std::string label;
};

struct RegisterConfig {
  double bz = 0.65;  // T
  double gamma_e = constants::kGammaE;
  double gamma_n = constants::kGammaC13;
  double detuning_apar = constants::kApar14N;  // rad/s
  std::vector<NuclearSpinDesc> nuclei;
  // Keys are (i, j) with i < j; nucleus indices are 0-based.
  std::map<std::pair<int, int>, double> couplings;  // rad/s
  double rabi = 20e6;  // Hz, t_pi = 1 / (4 rabi)
  double rabi_error = 0.0;
  bool include_detuning = false;
  bool include_internuclear = false;

  int num_nuclei() const { return static_cast<int>(nuclei.size()); }
  Layout layout() const { return Layout(nuclei.size() + 1, 2); }
  int dim() const { return layout_dim(layout()); }
  double t_pi() const { return 1.0 / (4.0 * rabi); }
  // Symmetric lookup, 0 when absent.
  double coupling(int i, int j) const;
  void set_coupling(int i, int j, double g);
  // Throws SpecError on violated invariants.
  void validate() const;
};

// Three nuclei at 0.65 T with the published hyperfine vectors and internuclear
// constants. Detuning and internuclear flags are on, rabi_error is 1%.
RegisterConfig reference_register();

// The register reduced to the electron and nucleus j, with no couplings.
RegisterConfig single_nucleus_register(const RegisterConfig& cfg, int j);

Vec3 hyperfine_from_position(const Vec3& r, double gamma_e, double gamma_n);

double internuclear_coupling(
    const Vec3& r_i, const Vec3& r_j, double gamma_n,
    CouplingConvention convention = CouplingConvention::kVerbatim);

// A_par P1 - sum gamma_n B I^z + P1 sum A_j . I_j + H_nn, electron restricted
// to {|1>, |0>} with S_z -> P1.
Operator build_static_hamiltonian(const RegisterConfig& cfg);

// 2 pi rabi (1 + error) (|1><0| e^{i phase} + h.c.). A pulse of length t_pi
// at error 0 is a pi rotation.
Operator build_control_hamiltonian(const RegisterConfig& cfg, double phase,
                                   double error);

struct FrameVector {
  Vec3 omega;
  double magnitude = 0.0;
  Vec3 unit;
};

// omega_j = gamma_n B z - A_j / 2.
FrameVector effective_nuclear_frequency(const RegisterConfig& cfg, int j);

// Component of A_j orthogonal to omega_j.
Vec3 perpendicular_hyperfine(const RegisterConfig& cfg, int j);

// Spin-1/2 rotation taking (A_perp, omega x A_perp, omega) of nucleus j to
// (x, y, z).
Operator nuclear_frame_rotation(const RegisterConfig& cfg, int j);

// Tensor product of the per-nucleus frame rotations, identity on the electron.
Operator register_frame_rotation(const RegisterConfig& cfg);

// -sum_j omega_j . I_j, the electron-averaged nuclear precession.
Operator free_precession_hamiltonian(const RegisterConfig& cfg);

}  // namespace nvgate

#endif  // NVGATE_REGISTER_MODEL_H_
