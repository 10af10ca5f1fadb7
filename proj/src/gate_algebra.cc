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

#include "nvgate/gate_algebra.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "nvgate/errors.h"

namespace nvgate {

Axis parse_axis(const std::string& s) {
  if (s == "x" || s == "X") return Axis::kX;
  if (s == "y" || s == "Y") return Axis::kY;
  if (s == "z" || s == "Z") return Axis::kZ;
  throw SpecError("invalid axis label '" + s + "'");
}

char axis_char(Axis a) {
  switch (a) {
    case Axis::kX:
      return 'x';
    case Axis::kY:
      return 'y';
    case Axis::kZ:
      return 'z';
  }
  return '?';
}

void RecipeSpec::validate() const {
  std::set<int> seen;
  for (const auto& g : gates) {
    if (!std::isfinite(g.phase)) throw SpecError("gate phase must be finite");
    if (g.target < 0) throw SpecError("gate target must be non-negative");
    if (!seen.insert(g.target).second) {
      throw SpecError("recipe targets must be distinct");
    }
  }
  if (central_axis == Axis::kZ) {
    throw SpecError("central rotation axis must be x or y");
  }
  if (!std::isfinite(central_phase)) throw SpecError("phase must be finite");
}

Layout register_layout(int num_nuclei) { return Layout(num_nuclei + 1, 2); }

namespace {

int site_of(int target, const Layout& layout) {
  int site = target + 1;
  if (target < 0 || site >= static_cast<int>(layout.size())) {
    throw SpecError("gate target " + std::to_string(target) +
                    " outside register");
  }
  return site;
}

double central_axis_phase(Axis a) { return a == Axis::kY ? kPi / 2 : 0.0; }

// prod_n I_{j_n}^{alpha_n} on the given layout with an optional site offset.
Operator spin_product(const std::vector<int>& targets,
                      const std::vector<Axis>& axes, const Layout& layout,
                      int site_offset) {
  if (targets.size() != axes.size()) {
    throw SpecError("targets and axes differ in length");
  }
  if (std::set<int>(targets.begin(), targets.end()).size() != targets.size()) {
    throw SpecError("targets must be distinct");
  }
  Operator p = identity(layout_dim(layout));
  for (std::size_t n = 0; n < targets.size(); ++n) {
    int site = targets[n] + site_offset;
    if (targets[n] < 0 || site >= static_cast<int>(layout.size())) {
      throw SpecError("target outside register");
    }
    p = p * embed(spin_half(axis_char(axes[n])), site, layout);
  }
  return p;
}

struct ClosedFormShape {
  int sign;
  Axis electron_axis;
};

ClosedFormShape closed_form_shape(int n, Axis central_axis) {
  const int m = n / 2;
  const int parity_sign = (m % 2 == 0) ? 1 : -1;
  if (n % 2 == 0) return {parity_sign, central_axis};
  if (central_axis == Axis::kX) return {-parity_sign, Axis::kY};
  return {parity_sign, Axis::kX};
}

}  // namespace

Operator q_gate(const GateSpec& spec, const Layout& layout) {
  int site = site_of(spec.target, layout);
  Operator g = embed(pauli('z'), 0, layout) *
               embed(spin_half(axis_char(spec.axis)), site, layout);
  return exp_i(g, spec.phase);
}

Operator electron_rotation(double angle, double axis_phase,
                           const Layout& layout) {
  Operator n = std::cos(axis_phase) * pauli('x') +
               std::sin(axis_phase) * pauli('y');
  Operator local =
      std::cos(angle / 2) * identity(2) + kI * std::sin(angle / 2) * n;
  return embed(local, 0, layout);
}

Operator compose_recipe(const RecipeSpec& recipe, const Layout& layout) {
  recipe.validate();
  const int dim = layout_dim(layout);
  Operator qn = identity(dim);
  for (const auto& g : recipe.gates) qn = qn * q_gate(g, layout);
  const double a = central_axis_phase(recipe.central_axis);
  return qn * electron_rotation(2 * recipe.central_phase + kPi, a, layout) *
         qn * electron_rotation(kPi, a, layout);
}

Operator general_form(const RecipeSpec& recipe, const Layout& layout) {
  recipe.validate();
  const int dim = layout_dim(layout);
  const Operator sz = embed(pauli('z'), 0, layout);
  Operator g = embed(pauli(axis_char(recipe.central_axis)), 0, layout);
  for (const auto& gate : recipe.gates) {
    int site = site_of(gate.target, layout);
    Operator factor = std::cos(gate.phase) * identity(dim) -
                      2.0 * kI * std::sin(gate.phase) * sz *
                          embed(spin_half(axis_char(gate.axis)), site, layout);
    g = g * factor;
  }
  return exp_i(0.5 * (g + g.adjoint()), recipe.central_phase);
}

Axis disentangled_electron_axis(int num_targets, Axis central_axis) {
  return closed_form_shape(num_targets, central_axis).electron_axis;
}

Operator closed_form(const std::vector<int>& targets,
                     const std::vector<Axis>& axes, double phi,
                     Axis central_axis, const Layout& layout) {
  if (central_axis == Axis::kZ) throw SpecError("central axis must be x or y");
  const int n = static_cast<int>(targets.size());
  const auto shape = closed_form_shape(n, central_axis);
  Operator g = embed(pauli(axis_char(shape.electron_axis)), 0, layout) *
               spin_product(targets, axes, layout, 1);
  return exp_i(g, shape.sign * std::ldexp(1.0, n) * phi);
}

Operator conditional_nuclear_propagator(const std::vector<int>& targets,
                                        const std::vector<Axis>& axes,
                                        double phi, Axis central_axis,
                                        int branch_sign,
                                        const Layout& nuclear_layout) {
  if (branch_sign != 1 && branch_sign != -1) {
    throw SpecError("branch sign must be +1 or -1");
  }
  const int n = static_cast<int>(targets.size());
  const auto shape = closed_form_shape(n, central_axis);
  Operator p = spin_product(targets, axes, nuclear_layout, 0);
  return exp_i(p, shape.sign * std::ldexp(1.0, n) * branch_sign * phi);
}

Operator single_nucleus_rotation(const GateSpec& spec, int branch_sign,
                                 const Layout& nuclear_layout) {
  if (branch_sign != 1 && branch_sign != -1) {
    throw SpecError("branch sign must be +1 or -1");
  }
  if (spec.target < 0 ||
      spec.target >= static_cast<int>(nuclear_layout.size())) {
    throw SpecError("target outside register");
  }
  Operator g = embed(spin_half(axis_char(spec.axis)), spec.target,
                     nuclear_layout);
  return exp_i(g, branch_sign * spec.phase);
}

std::vector<SwapFactor> swap_decomposition(int j, SwapKind kind) {
  std::vector<SwapFactor> out;
  if (kind == SwapKind::kSwap) {
    out.push_back({GateSpec{j, Axis::kZ, kPi / 2}, 0.0, 0.0});
  }
  // D^dagger sigma_z D = sigma_x, then sigma_y.
  out.push_back({GateSpec{j, Axis::kX, kPi / 2}, kPi / 2, kPi / 2});
  out.push_back({GateSpec{j, Axis::kY, kPi / 2}, -kPi / 2, 0.0});
  return out;
}

Operator swap_product(const std::vector<SwapFactor>& factors,
                      const Layout& layout) {
  Operator u = identity(layout_dim(layout));
  for (const auto& f : factors) {
    Operator d =
        electron_rotation(f.dressing_angle, f.dressing_axis_phase, layout);
    u = u * d.adjoint() * q_gate(f.gate, layout) * d;
  }
  return u;
}

Operator textbook_swap(int j, SwapKind kind, const Layout& layout) {
  const int site = site_of(j, layout);
  const int dim = layout_dim(layout);
  int stride_n = 1;
  for (std::size_t s = site + 1; s < layout.size(); ++s) stride_n *= layout[s];
  const int stride_e = dim / 2;
  Operator u = Operator::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    int be = (i / stride_e) % 2;
    int bn = (i / stride_n) % 2;
    int k = i + (bn - be) * stride_e + (be - bn) * stride_n;
    Complex amp = (kind == SwapKind::kISwap && be != bn) ? kI : Complex(1.0);
    u(k, i) = amp;
  }
  return u;
}

double correlator_phase(int half_count, int m) {
  const double sign = (half_count % 2 == 0) ? 1.0 : -1.0;
  return sign * (kPi / 4 + m * kPi);
}

namespace {

int nuclei_of(const DensityOperator& rho_n) {
  int n = 0;
  Eigen::Index d = rho_n.rows();
  while (d > 1 && d % 2 == 0) {
    d /= 2;
    ++n;
  }
  if (d != 1 || n == 0) throw StateError("nuclear state must be on qubits");
  return n;
}

}  // namespace

double correlator_readout(const DensityOperator& rho_n,
                          const std::vector<int>& targets,
                          const std::vector<Axis>& axes) {
  validate_density(rho_n);
  const int nuclei = nuclei_of(rho_n);
  if (targets.empty()) throw SpecError("correlator needs targets");
  if (targets.size() != axes.size()) throw SpecError("targets/axes mismatch");
  const int n = static_cast<int>(targets.size());
  const Layout layout = register_layout(nuclei);

  RecipeSpec recipe;
  for (int t = 0; t < n; ++t) recipe.gates.push_back({targets[t], axes[t], kPi / 2});
  recipe.central_phase = correlator_phase(n / 2);
  recipe.central_axis = Axis::kX;
  const Operator u = compose_recipe(recipe, layout);

  DensityOperator e1 = DensityOperator::Zero(2, 2);
  e1(0, 0) = 1.0;
  const DensityOperator rho = kron(e1, rho_n);
  const DensityOperator out = u * rho * u.adjoint();
  const char measured = (n % 2 == 0) ? 'y' : 'x';
  return (out * embed(pauli(measured), 0, layout)).trace().real();
}

double correlator_truth(const DensityOperator& rho_n,
                        const std::vector<int>& targets,
                        const std::vector<Axis>& axes) {
  validate_density(rho_n);
  const int nuclei = nuclei_of(rho_n);
  std::map<int, char> string;
  if (targets.size() != axes.size()) throw SpecError("targets/axes mismatch");
  for (std::size_t t = 0; t < targets.size(); ++t) {
    if (targets[t] < 0 || targets[t] >= nuclei) throw SpecError("bad target");
    string[targets[t]] = axis_char(axes[t]);
  }
  return (rho_n * pauli_string(string, Layout(nuclei, 2))).trace().real();
}

namespace {

class RandomInstances {
 public:
  explicit RandomInstances(std::uint64_t seed) : gen_(seed) {}

  int integer(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(gen_);
  }
  double angle() { return std::uniform_real_distribution<double>(-kPi, kPi)(gen_); }
  Axis axis() { return static_cast<Axis>(integer(0, 2)); }

  StateVector state(int dim) {
    std::normal_distribution<double> g;
    StateVector v(dim);
    for (int i = 0; i < dim; ++i) v(i) = Complex(g(gen_), g(gen_));
    return v.normalized();
  }

  StateVector product_state(int qubits) {
    StateVector v = state(2);
    for (int q = 1; q < qubits; ++q) {
      StateVector next(v.size() * 2);
      StateVector f = state(2);
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        next(2 * i) = v(i) * f(0);
        next(2 * i + 1) = v(i) * f(1);
      }
      v = next;
    }
    return v;
  }

  DensityOperator density(int dim) {
    std::normal_distribution<double> g;
    Operator a(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(gen_), g(gen_));
    DensityOperator rho = a * a.adjoint();
    rho /= rho.trace();
    return 0.5 * (rho + rho.adjoint());
  }

  std::vector<int> subset(int n, int k) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), gen_);
    all.resize(k);
    return all;
  }

 private:
  std::mt19937_64 gen_;
};

StateVector electron_eigenstate(Axis axis, int sign) {
  StateVector v(2);
  const double r = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case Axis::kX:
      v << r, static_cast<double>(sign) * r;
      break;
    case Axis::kY:
      v << r, static_cast<double>(sign) * kI * r;
      break;
    case Axis::kZ:
      v << (sign > 0 ? 1.0 : 0.0), (sign > 0 ? 0.0 : 1.0);
      break;
  }
  return v;
}

StateVector kron_state(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

}  // namespace

std::vector<IdentityCheck> verify_identities(std::uint64_t seed,
                                             int instances) {
  RandomInstances rng(seed);
  IdentityCheck closed{"recipe_vs_closed_form", 0, 0.0, 1e-10, false};
  IdentityCheck general{"recipe_vs_general_form", 0, 0.0, 1e-10, false};
  IdentityCheck conditional{"conditional_propagators", 0, 0.0, 1e-10, false};
  IdentityCheck single{"single_nucleus_rotation", 0, 0.0, 1e-10, false};
  IdentityCheck disentangle{"electron_disentanglement", 0, 0.0, 1e-10, false};
  IdentityCheck correlator{"correlator_readout", 0, 0.0, 1e-10, false};
  IdentityCheck swaps{"swap_decompositions", 0, 0.0, 1e-10, false};

  for (int it = 0; it < instances; ++it) {
    const int n = rng.integer(1, 5);
    const int nuclei = std::min(5, n + rng.integer(0, 1));
    const Layout layout = register_layout(nuclei);
    const Layout nlayout(nuclei, 2);
    const Axis central = rng.integer(0, 1) ? Axis::kY : Axis::kX;
    const double phi = rng.angle();
    const std::vector<int> targets = rng.subset(nuclei, n);
    std::vector<Axis> axes;
    RecipeSpec recipe{{}, phi, central};
    for (int t : targets) {
      axes.push_back(rng.axis());
      recipe.gates.push_back({t, axes.back(), kPi / 2});
    }

    const Operator u = compose_recipe(recipe, layout);
    const Operator cf = closed_form(targets, axes, phi, central, layout);
    closed.max_deviation =
        std::max(closed.max_deviation, 1.0 - process_fidelity(u, cf));
    ++closed.instances;

    RecipeSpec free_recipe = recipe;
    for (auto& g : free_recipe.gates) g.phase = rng.angle();
    general.max_deviation = std::max(
        general.max_deviation,
        1.0 - process_fidelity(compose_recipe(free_recipe, layout),
                               general_form(free_recipe, layout)));
    ++general.instances;

    const Axis e_axis = disentangled_electron_axis(n, central);
    const Operator se = embed(pauli(axis_char(e_axis)), 0, layout);
    disentangle.max_deviation =
        std::max(disentangle.max_deviation, (cf * se - se * cf).norm());
    ++disentangle.instances;

    const int branch = rng.integer(0, 1) ? 1 : -1;
    const StateVector nuc = rng.product_state(nuclei);
    const StateVector full = kron_state(electron_eigenstate(e_axis, branch), nuc);
    const Operator cond = conditional_nuclear_propagator(targets, axes, phi,
                                                         central, branch, nlayout);
    const StateVector expect =
        kron_state(electron_eigenstate(e_axis, branch), cond * nuc);
    conditional.max_deviation =
        std::max(conditional.max_deviation, (cf * full - expect).norm());
    ++conditional.instances;

    const GateSpec g{targets[0], axes[0], rng.angle()};
    const StateVector zfull = kron_state(electron_eigenstate(Axis::kZ, branch), nuc);
    const StateVector zexpect = kron_state(
        electron_eigenstate(Axis::kZ, branch),
        single_nucleus_rotation(g, branch, nlayout) * nuc);
    single.max_deviation = std::max(single.max_deviation,
                                    (q_gate(g, layout) * zfull - zexpect).norm());
    ++single.instances;
  }

  for (int it = 0; it < instances; ++it) {
    const int half = 1 + it % 2;
    const int nuclei = 2 * half;
    std::vector<int> targets(nuclei);
    std::iota(targets.begin(), targets.end(), 0);
    std::vector<Axis> axes;
    for (int t = 0; t < nuclei; ++t) axes.push_back(rng.axis());
    const DensityOperator rho = rng.density(1 << nuclei);
    correlator.max_deviation =
        std::max(correlator.max_deviation,
                 std::abs(correlator_readout(rho, targets, axes) -
                          correlator_truth(rho, targets, axes)));
    ++correlator.instances;
  }

  for (int nuclei = 1; nuclei <= 3; ++nuclei) {
    const Layout layout = register_layout(nuclei);
    for (int j = 0; j < nuclei; ++j) {
      for (SwapKind kind : {SwapKind::kSwap, SwapKind::kISwap}) {
        double f = process_fidelity(swap_product(swap_decomposition(j, kind), layout),
                                    textbook_swap(j, kind, layout));
        swaps.max_deviation = std::max(swaps.max_deviation, 1.0 - f);
        ++swaps.instances;
      }
    }
  }

  std::vector<IdentityCheck> out{closed,      general,    conditional, single,
                                 disentangle, correlator, swaps};
  for (auto& c : out) c.passed = c.max_deviation <= c.tolerance;
  return out;
}

}  // namespace nvgate
