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

#include <gtest/gtest.h>

#include "nvgate/errors.h"
#include "nvgate/register_model.h"

namespace nvgate {
namespace {

using constants::kGammaC13;
using constants::kGammaE;
using constants::kHbar;
using constants::kMu0;

Operator sigma_dot(const Vec3& v) {
  return v.x() * pauli('x') + v.y() * pauli('y') + v.z() * pauli('z');
}

double dipolar_scale(double d) {
  return kMu0 * kGammaE * kGammaC13 * kHbar / (4.0 * kPi * d * d * d);
}

TEST(Reference, Constants) {
  const RegisterConfig cfg = reference_register();
  EXPECT_EQ(cfg.num_nuclei(), 3);
  EXPECT_EQ(cfg.dim(), 16);
  EXPECT_NEAR(cfg.t_pi(), 12.5e-9, 1e-21);
  EXPECT_NEAR(cfg.nuclei[0].hyperfine.x(), -kTwoPi * 56e3, 1e-6);
  EXPECT_NEAR(cfg.nuclei[2].hyperfine.z(), kTwoPi * 96e3, 1e-6);
  EXPECT_NEAR(cfg.coupling(1, 0), -kTwoPi * 20.0, 1e-12);
  EXPECT_NEAR(cfg.coupling(2, 1), kTwoPi * 7.5, 1e-12);
  EXPECT_EQ(cfg.coupling(0, 0), 0.0);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Config, Invariants) {
  RegisterConfig cfg = reference_register();
  cfg.rabi_error = 1.0;
  EXPECT_THROW(cfg.validate(), SpecError);
  cfg = reference_register();
  cfg.rabi = 0.0;
  EXPECT_THROW(cfg.validate(), SpecError);
  cfg = reference_register();
  cfg.nuclei.clear();
  EXPECT_THROW(cfg.validate(), SpecError);
}

TEST(Config, PositionMustMatchHyperfineUnlessOverride) {
  RegisterConfig cfg = reference_register();
  cfg.nuclei[0].position = Vec3(3e-10, 1e-10, 4e-10);
  EXPECT_THROW(cfg.validate(), SpecError);
  cfg.nuclei[0].hyperfine_override = true;
  EXPECT_NO_THROW(cfg.validate());
  cfg.nuclei[0].hyperfine_override = false;
  cfg.nuclei[0].hyperfine = hyperfine_from_position(*cfg.nuclei[0].position,
                                                    cfg.gamma_e, cfg.gamma_n);
  EXPECT_NO_THROW(cfg.validate());
}

TEST(Hyperfine, AxisExamplesAndCubicLaw) {
  const double d = 5e-10;
  const Vec3 along_z = hyperfine_from_position(Vec3(0, 0, d), kGammaE, kGammaC13);
  EXPECT_LT((along_z - (-2.0 * dipolar_scale(d)) * Vec3::UnitZ()).norm(),
            1e-9 * std::abs(dipolar_scale(d)));
  const Vec3 along_x = hyperfine_from_position(Vec3(d, 0, 0), kGammaE, kGammaC13);
  EXPECT_LT((along_x - dipolar_scale(d) * Vec3::UnitZ()).norm(),
            1e-9 * std::abs(dipolar_scale(d)));
  const Vec3 r(2e-10, -3e-10, 4e-10);
  EXPECT_NEAR(hyperfine_from_position(r, kGammaE, kGammaC13).norm() /
                  hyperfine_from_position(2.0 * r, kGammaE, kGammaC13).norm(),
              8.0, 1e-12);
  EXPECT_THROW(hyperfine_from_position(Vec3::Zero(), kGammaE, kGammaC13), GeometryError);
}

TEST(Internuclear, AngularFactorAndSymmetry) {
  const double d = 3e-10;
  const double pref = kHbar * kMu0 * kGammaC13 * kGammaC13 / (2.0 * d * d * d);
  const Vec3 o(1e-10, 2e-10, -1e-10);
  EXPECT_NEAR(internuclear_coupling(o, o + Vec3(0, 0, d), kGammaC13), -2.0 * pref,
              1e-12 * pref);
  EXPECT_NEAR(internuclear_coupling(o, o + Vec3(d, 0, 0), kGammaC13), pref, 1e-12 * pref);
  const double nz = 1.0 / std::sqrt(3.0);
  const Vec3 magic(d * std::sqrt(1 - nz * nz), 0.0, d * nz);
  EXPECT_NEAR(internuclear_coupling(o, o + magic, kGammaC13), 0.0, 1e-12 * pref);

  const Vec3 a(1e-10, -2e-10, 3e-10), b(-4e-10, 1e-10, 2e-10), shift(7e-10, 1e-10, -3e-10);
  const double g = internuclear_coupling(a, b, kGammaC13);
  EXPECT_DOUBLE_EQ(g, internuclear_coupling(b, a, kGammaC13));
  EXPECT_NEAR(g, internuclear_coupling(a + shift, b + shift, kGammaC13), 1e-9 * std::abs(g));
  EXPECT_NEAR(g / internuclear_coupling(a, b, kGammaC13, CouplingConvention::kWithFourPi),
              4.0 * kPi, 1e-9);
  EXPECT_THROW(internuclear_coupling(a, a, kGammaC13), GeometryError);
}

TEST(StaticHamiltonian, BareNucleus) {
  RegisterConfig cfg;
  cfg.nuclei.push_back({});
  const Operator h = build_static_hamiltonian(cfg);
  const Operator expected = -cfg.gamma_n * cfg.bz * embed(spin_half('z'), 1, cfg.layout());
  EXPECT_LT((h - expected).norm(), 1e-9);
}

TEST(StaticHamiltonian, ReferenceStructure) {
  const RegisterConfig cfg = reference_register();
  const Operator h = build_static_hamiltonian(cfg);
  EXPECT_LT(hermiticity_error(h), 1e-14);
  // No electron flips: the off-diagonal electron blocks vanish.
  EXPECT_LT(h.block(0, 8, 8, 8).norm(), 1e-9);
  Operator p1 = Operator::Zero(2, 2);
  p1(0, 0) = 1.0;
  const Operator p = embed(p1, 0, cfg.layout());
  EXPECT_LT((h * p - p * h).norm(), 1e-9);
}

TEST(StaticHamiltonian, ZeroBlockEigenvalues) {
  RegisterConfig cfg = single_nucleus_register(reference_register(), 0);
  cfg.include_detuning = true;
  const Operator h = build_static_hamiltonian(cfg);
  // |0> electron block: bare Zeeman only.
  Eigen::SelfAdjointEigenSolver<Operator> es(h.block(2, 2, 2, 2));
  const double half = 0.5 * cfg.gamma_n * cfg.bz;
  EXPECT_NEAR(es.eigenvalues()(0), -half, 1e-6);
  EXPECT_NEAR(es.eigenvalues()(1), half, 1e-6);
  // |1> block: A_par plus the precession about omega_j' = gamma B z - A.
  const Vec3 a = cfg.nuclei[0].hyperfine;
  const double w1 = (cfg.gamma_n * cfg.bz * Vec3::UnitZ() - a).norm();
  Eigen::SelfAdjointEigenSolver<Operator> es1(h.block(0, 0, 2, 2));
  EXPECT_NEAR(es1.eigenvalues()(0), cfg.detuning_apar - 0.5 * w1, 1e-5);
  EXPECT_NEAR(es1.eigenvalues()(1), cfg.detuning_apar + 0.5 * w1, 1e-5);
}

TEST(StaticHamiltonian, ElectronFactorVanishesWithoutCouplings) {
  RegisterConfig cfg;
  cfg.nuclei.resize(2);
  cfg.include_detuning = false;
  const Operator h = build_static_hamiltonian(cfg);
  EXPECT_LT((h.block(0, 0, 4, 4) - h.block(4, 4, 4, 4)).norm(), 1e-9);
}

TEST(StaticHamiltonian, InternuclearFlag) {
  RegisterConfig cfg = reference_register();
  cfg.include_internuclear = false;
  const Operator h0 = build_static_hamiltonian(cfg);
  cfg.include_internuclear = true;
  const Operator h1 = build_static_hamiltonian(cfg);
  const Layout l = cfg.layout();
  auto term = [&](int i, int j) -> Operator {
    return embed(spin_half('z'), i + 1, l) * embed(spin_half('z'), j + 1, l) -
           0.5 * (embed(spin_half('x'), i + 1, l) * embed(spin_half('x'), j + 1, l) +
                  embed(spin_half('y'), i + 1, l) * embed(spin_half('y'), j + 1, l));
  };
  const Operator expected = cfg.coupling(0, 1) * term(0, 1) +
                            cfg.coupling(0, 2) * term(0, 2) +
                            cfg.coupling(1, 2) * term(1, 2);
  EXPECT_LT((h1 - h0 - expected).norm(), 1e-6);
}

// A pi pulse on the electron flips the sign of sigma_z, so the hyperfine term
// P1 A.I becomes P0 A.I: the modulation F(t) = +-1 in the toggling frame.
TEST(StaticHamiltonian, PiPulseConjugationFlipsHyperfineSign) {
  RegisterConfig cfg = single_nucleus_register(reference_register(), 1);
  cfg.include_detuning = false;
  const Layout l = cfg.layout();
  const Vec3 a = cfg.nuclei[0].hyperfine;
  Operator ai = Operator::Zero(2, 2);
  for (int k = 0; k < 3; ++k) ai += a(k) * spin_half("xyz"[k]);
  const Operator sz_ai = embed(pauli('z'), 0, l) * embed(ai, 1, l);
  const Operator x = embed(pauli('x'), 0, l);
  EXPECT_LT((x * sz_ai * x + sz_ai).norm(), 1e-9);
  const Operator h = build_static_hamiltonian(cfg);
  const Operator flipped = x * h * x;
  // H = A.I/2 + sigma_z A.I/2 - gamma B I^z: only the sigma_z part flips.
  EXPECT_LT((h - flipped - sz_ai).norm(), 1e-6);
}

TEST(ControlHamiltonian, AxesAndEigenvalues) {
  RegisterConfig cfg;
  cfg.nuclei.push_back({});
  const Layout l = cfg.layout();
  const double amp = kTwoPi * cfg.rabi;
  const Operator hx = build_control_hamiltonian(cfg, 0.0, 0.0);
  EXPECT_LT((hx - amp * embed(pauli('x'), 0, l)).norm(), 1e-6);
  const Operator hy = build_control_hamiltonian(cfg, kPi / 2, 0.0);
  EXPECT_LT((hy + amp * embed(pauli('y'), 0, l)).norm(), 1e-6);
  Eigen::SelfAdjointEigenSolver<Operator> es(build_control_hamiltonian(cfg, 0.4, 0.01));
  EXPECT_NEAR(es.eigenvalues()(0), -amp * 1.01, 1e-3);
  EXPECT_NEAR(es.eigenvalues()(3), amp * 1.01, 1e-3);
}

TEST(ControlHamiltonian, TpiPulseIsPiRotation) {
  RegisterConfig cfg;
  cfg.nuclei.push_back({});
  const Operator u = propagator(build_control_hamiltonian(cfg, 0.3, 0.0), cfg.t_pi());
  // exp(-i pi (cos a sigma_x - sin a sigma_y) / 2) = -i (cos a sigma_x - sin a sigma_y)
  const Operator n = std::cos(0.3) * pauli('x') - std::sin(0.3) * pauli('y');
  EXPECT_LT((u - kron(-kI * n, identity(2))).norm(), 1e-9);
}

TEST(Frequency, BareAndReferenceNucleus) {
  RegisterConfig cfg = reference_register();
  cfg.nuclei.push_back({});
  const FrameVector bare = effective_nuclear_frequency(cfg, 3);
  EXPECT_NEAR(bare.magnitude / kTwoPi, 6.958e6, 1e3);
  EXPECT_LT((bare.unit - Vec3::UnitZ()).norm(), 1e-15);
  const FrameVector f3 = effective_nuclear_frequency(cfg, 2);
  EXPECT_NEAR(f3.magnitude / kTwoPi, 6.911e6, 1e3);
  EXPECT_LT((f3.unit * f3.magnitude - f3.omega).norm(), 1e-6);
  const Vec3 expected = cfg.gamma_n * cfg.bz * Vec3::UnitZ() - 0.5 * cfg.nuclei[2].hyperfine;
  EXPECT_LT((f3.omega - expected).norm(), 1e-6);

  cfg.nuclei[3].hyperfine = Vec3(0, 0, kTwoPi * 50e3);
  EXPECT_LT((effective_nuclear_frequency(cfg, 3).unit - Vec3::UnitZ()).norm(), 1e-15);
}

TEST(Frame, RotationMapsFrameAxes) {
  const RegisterConfig cfg = reference_register();
  for (int j = 0; j < 3; ++j) {
    const Vec3 w = effective_nuclear_frequency(cfg, j).unit;
    const Vec3 ap = perpendicular_hyperfine(cfg, j);
    EXPECT_LT(std::abs(ap.dot(w)), 1e-9 * ap.norm());
    const Vec3 e1 = ap.normalized();
    const Operator r = nuclear_frame_rotation(cfg, j);
    EXPECT_LT(unitarity_error(r), 1e-14);
    EXPECT_LT((r * sigma_dot(w) * r.adjoint() - pauli('z')).norm(), 1e-12);
    EXPECT_LT((r * sigma_dot(e1) * r.adjoint() - pauli('x')).norm(), 1e-12);
    EXPECT_LT((r * sigma_dot(w.cross(e1)) * r.adjoint() - pauli('y')).norm(), 1e-12);
  }
}

TEST(Frame, PrecessionIsElectronAverage) {
  RegisterConfig cfg = reference_register();
  cfg.include_detuning = false;
  cfg.include_internuclear = false;
  const Operator h = build_static_hamiltonian(cfg);
  const Operator avg = 0.5 * (h.block(0, 0, 8, 8) + h.block(8, 8, 8, 8));
  EXPECT_LT((free_precession_hamiltonian(cfg).block(0, 0, 8, 8) - avg).norm(), 1e-6);
}

}  // namespace
}  // namespace nvgate
