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

#include "nvgate/register_model.h"

#include <cmath>
#include <string>

#include "nvgate/errors.h"

namespace nvgate {

double RegisterConfig::coupling(int i, int j) const {
  auto it = couplings.find({std::min(i, j), std::max(i, j)});
  return it == couplings.end() ? 0.0 : it->second;
}

void RegisterConfig::set_coupling(int i, int j, double g) {
  if (i == j) throw SpecError("coupling of a nucleus with itself");
  couplings[{std::min(i, j), std::max(i, j)}] = g;
}

void RegisterConfig::validate() const {
  if (nuclei.empty()) throw SpecError("register needs at least one nucleus");
  if (!(rabi > 0.0)) throw SpecError("rabi frequency must be positive");
  if (!(std::abs(rabi_error) < 1.0)) throw SpecError("|rabi_error| must be < 1");
  if (!std::isfinite(bz)) throw SpecError("field must be finite");
  for (const auto& [key, g] : couplings) {
    if (key.first >= key.second || key.first < 0 ||
        key.second >= num_nuclei()) {
      throw SpecError("coupling indices out of range");
    }
    if (!std::isfinite(g)) throw SpecError("coupling must be finite");
  }
  for (const auto& n : nuclei) {
    if (!n.hyperfine.allFinite()) throw SpecError("hyperfine must be finite");
    if (n.position && !n.hyperfine_override) {
      Vec3 expected = hyperfine_from_position(*n.position, gamma_e, gamma_n);
      double scale = std::max(expected.norm(), 1e-300);
      if ((expected - n.hyperfine).norm() / scale > 1e-6) {
        throw SpecError("nucleus '" + n.label +
                        "': hyperfine disagrees with position and is not "
                        "marked as override");
      }
    }
  }
}

RegisterConfig reference_register() {
  RegisterConfig cfg;
  const double khz = kTwoPi * 1e3;
  const Vec3 a[3] = {Vec3(-56, -32, -45), Vec3(-7.6, 39, 52),
                     Vec3(-22, 13, 96)};
  for (int j = 0; j < 3; ++j) {
    NuclearSpinDesc n;
    n.hyperfine = a[j] * khz;
    n.label = "C" + std::to_string(j + 1);
    cfg.nuclei.push_back(n);
  }
  cfg.set_coupling(0, 1, -kTwoPi * 20.0);
  cfg.set_coupling(0, 2, -kTwoPi * 10.0);
  cfg.set_coupling(1, 2, kTwoPi * 7.5);
  cfg.rabi_error = 0.01;
  cfg.include_detuning = true;
  cfg.include_internuclear = true;
  return cfg;
}

RegisterConfig single_nucleus_register(const RegisterConfig& cfg, int j) {
  RegisterConfig out = cfg;
  out.nuclei = {cfg.nuclei.at(j)};
  out.couplings.clear();
  return out;
}

Vec3 hyperfine_from_position(const Vec3& r, double gamma_e, double gamma_n) {
  double d = r.norm();
  if (d == 0.0) throw GeometryError("nucleus at the NV site");
  Vec3 rhat = r / d;
  Vec3 z = Vec3::UnitZ();
  double pref = constants::kMu0 * gamma_e * gamma_n * constants::kHbar /
                (4.0 * kPi * d * d * d);
  return pref * (z - 3.0 * rhat.z() * rhat);
}

double internuclear_coupling(const Vec3& r_i, const Vec3& r_j, double gamma_n,
                             CouplingConvention convention) {
  Vec3 sep = r_j - r_i;
  double d = sep.norm();
  if (d == 0.0) throw GeometryError("coincident nuclear positions");
  double nz = sep.z() / d;
  double pref = constants::kHbar * constants::kMu0 * gamma_n * gamma_n /
                (2.0 * d * d * d);
  if (convention == CouplingConvention::kWithFourPi) pref /= 4.0 * kPi;
  return pref * (1.0 - 3.0 * nz * nz);
}

Operator build_static_hamiltonian(const RegisterConfig& cfg) {
  cfg.validate();
  const Layout layout = cfg.layout();
  const int dim = layout_dim(layout);
  Operator p1_local = Operator::Zero(2, 2);
  p1_local(0, 0) = 1.0;
  const Operator p1 = embed(p1_local, 0, layout);

  Operator h = Operator::Zero(dim, dim);
  if (cfg.include_detuning) h += cfg.detuning_apar * p1;
  for (int j = 0; j < cfg.num_nuclei(); ++j) {
    const Vec3& a = cfg.nuclei[j].hyperfine;
    Operator ix = embed(spin_half('x'), j + 1, layout);
    Operator iy = embed(spin_half('y'), j + 1, layout);
    Operator iz = embed(spin_half('z'), j + 1, layout);
    h -= cfg.gamma_n * cfg.bz * iz;
    h += p1 * (a.x() * ix + a.y() * iy + a.z() * iz);
  }
  if (cfg.include_internuclear) {
    for (const auto& [key, g] : cfg.couplings) {
      int a = key.first + 1;
      int b = key.second + 1;
      Operator zz = embed(spin_half('z'), a, layout) *
                    embed(spin_half('z'), b, layout);
      Operator xx = embed(spin_half('x'), a, layout) *
                    embed(spin_half('x'), b, layout);
      Operator yy = embed(spin_half('y'), a, layout) *
                    embed(spin_half('y'), b, layout);
      h += g * (zz - 0.5 * (xx + yy));
    }
  }
  return h;
}

Operator build_control_hamiltonian(const RegisterConfig& cfg, double phase,
                                   double error) {
  const Layout layout = cfg.layout();
  Operator local = Operator::Zero(2, 2);
  const double amp = kTwoPi * cfg.rabi * (1.0 + error);
  local(0, 1) = amp * std::polar(1.0, phase);
  local(1, 0) = amp * std::polar(1.0, -phase);
  return embed(local, 0, layout);
}

FrameVector effective_nuclear_frequency(const RegisterConfig& cfg, int j) {
  FrameVector f;
  f.omega = cfg.gamma_n * cfg.bz * Vec3::UnitZ() - 0.5 * cfg.nuclei.at(j).hyperfine;
  f.magnitude = f.omega.norm();
  f.unit = f.magnitude > 0.0 ? Vec3(f.omega / f.magnitude) : Vec3::UnitZ();
  return f;
}

Vec3 perpendicular_hyperfine(const RegisterConfig& cfg, int j) {
  const Vec3& a = cfg.nuclei.at(j).hyperfine;
  Vec3 w = effective_nuclear_frequency(cfg, j).unit;
  return a - a.dot(w) * w;
}

Operator nuclear_frame_rotation(const RegisterConfig& cfg, int j) {
  Vec3 w = effective_nuclear_frequency(cfg, j).unit;
  Vec3 e1 = perpendicular_hyperfine(cfg, j);
  if (e1.norm() < 1e-12 * std::max(1.0, cfg.nuclei[j].hyperfine.norm())) {
    // No transverse coupling: any axis orthogonal to omega will do.
    e1 = w.unitOrthogonal();
  }
  e1.normalize();
  Vec3 e2 = w.cross(e1);
  Eigen::Matrix3d r;
  r.row(0) = e1;
  r.row(1) = e2;
  r.row(2) = w;
  Eigen::AngleAxisd aa(r);
  const double th = aa.angle();
  const Vec3 n = aa.axis();
  Operator g = n.x() * pauli('x') + n.y() * pauli('y') + n.z() * pauli('z');
  return std::cos(th / 2) * identity(2) - kI * std::sin(th / 2) * g;
}

Operator register_frame_rotation(const RegisterConfig& cfg) {
  Operator w = identity(2);
  for (int j = 0; j < cfg.num_nuclei(); ++j) {
    w = kron(w, nuclear_frame_rotation(cfg, j));
  }
  return w;
}

Operator free_precession_hamiltonian(const RegisterConfig& cfg) {
  const Layout layout = cfg.layout();
  Operator h = Operator::Zero(cfg.dim(), cfg.dim());
  for (int j = 0; j < cfg.num_nuclei(); ++j) {
    Vec3 w = effective_nuclear_frequency(cfg, j).omega;
    h -= w.x() * embed(spin_half('x'), j + 1, layout) +
         w.y() * embed(spin_half('y'), j + 1, layout) +
         w.z() * embed(spin_half('z'), j + 1, layout);
  }
  return h;
}

}  // namespace nvgate
