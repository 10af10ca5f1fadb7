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

// Ideal gate layer: selective electron-nuclear gates, the N-body composition
// and its closed forms, and the correlator readout protocol.
//
// Nucleus indices are 0-based and live at layout site index + 1.

#ifndef NVGATE_GATE_ALGEBRA_H_
#define NVGATE_GATE_ALGEBRA_H_

#include <cstdint>
#include <string>
#include <vector>

#include "nvgate/operator_core.h"

namespace nvgate {

enum class Axis { kX, kY, kZ };

Axis parse_axis(const std::string& s);
char axis_char(Axis a);

struct GateSpec {
  int target = 0;
  Axis axis = Axis::kX;
  double phase = kPi / 2;
};

struct RecipeSpec {
  std::vector<GateSpec> gates;
  double central_phase = 0.0;
  Axis central_axis = Axis::kX;  // kX or kY

  // Throws SpecError on duplicate targets or a z central axis.
  void validate() const;
};

// Electron plus n qubit nuclei.
Layout register_layout(int num_nuclei);

// exp(i phase sigma_z I_j^axis).
Operator q_gate(const GateSpec& spec, const Layout& layout);

// exp(i angle (cos(a) sigma_x + sin(a) sigma_y) / 2) on the electron.
Operator electron_rotation(double angle, double axis_phase,
                           const Layout& layout);

// Q_N R(2 phi + pi) Q_N R(pi), R the central-axis rotation.
Operator compose_recipe(const RecipeSpec& recipe, const Layout& layout);

// exp(i phi sigma_x prod_n (cos phi_n - 2i sin phi_n sigma_z I_n)) for an x
// central axis (y central axis replaces sigma_x by sigma_y). Equal to the
// recipe up to a global sign for arbitrary inner phases.
Operator general_form(const RecipeSpec& recipe, const Layout& layout);

// Closed form valid when every inner phase is pi/2.
Operator closed_form(const std::vector<int>& targets,
                     const std::vector<Axis>& axes, double phi,
                     Axis central_axis, const Layout& layout);

// Electron Pauli axis left invariant by the closed form.
Axis disentangled_electron_axis(int num_targets, Axis central_axis);

// Nuclear-space propagator reached when the electron starts in the +1
// (branch_sign = +1) or -1 eigenstate of disentangled_electron_axis.
// nuclear_layout has one entry per nucleus.
Operator conditional_nuclear_propagator(const std::vector<int>& targets,
                                        const std::vector<Axis>& axes,
                                        double phi, Axis central_axis,
                                        int branch_sign,
                                        const Layout& nuclear_layout);

// exp(branch_sign i phase I_j^axis) on the nuclear space.
Operator single_nucleus_rotation(const GateSpec& spec, int branch_sign,
                                 const Layout& nuclear_layout);

enum class SwapKind { kSwap, kISwap };

// One factor D^dagger Q D of a swap decomposition, D an electron rotation.
struct SwapFactor {
  GateSpec gate;
  double dressing_angle = 0.0;
  double dressing_axis_phase = 0.0;
};

std::vector<SwapFactor> swap_decomposition(int j, SwapKind kind);

// Ordered product of the factors, first factor leftmost.
Operator swap_product(const std::vector<SwapFactor>& factors,
                      const Layout& layout);

// Textbook SWAP (or iSWAP) between the electron and nucleus j.
Operator textbook_swap(int j, SwapKind kind, const Layout& layout);

// phi = (-1)^M (pi/4 + m pi).
double correlator_phase(int half_count, int m = 0);

// Runs the readout protocol on |1><1| (x) rho_n: even target counts measure
// sigma_y after the x-central recipe, odd counts measure sigma_x. Throws
// StateError for an invalid rho_n.
double correlator_readout(const DensityOperator& rho_n,
                          const std::vector<int>& targets,
                          const std::vector<Axis>& axes);

// Tr[rho_n prod sigma_j^axis].
double correlator_truth(const DensityOperator& rho_n,
                        const std::vector<int>& targets,
                        const std::vector<Axis>& axes);

struct IdentityCheck {
  std::string name;
  int instances = 0;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// Randomized identity suite.
std::vector<IdentityCheck> verify_identities(std::uint64_t seed,
                                             int instances);

}  // namespace nvgate

#endif  // NVGATE_GATE_ALGEBRA_H_
