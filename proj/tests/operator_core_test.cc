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
#include <random>

#include <gtest/gtest.h>

#include "nvgate/errors.h"
#include "nvgate/operator_core.h"

namespace nvgate {
namespace {

Operator random_hermitian(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Operator a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(gen), g(gen));
  return 0.5 * (a + a.adjoint());
}

StateVector random_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(g(gen), g(gen));
  return v.normalized();
}

// Explicit Taylor series, independent of the eigendecomposition path.
Operator taylor_exp(const Operator& a) {
  Operator term = identity(a.rows());
  Operator sum = term;
  for (int n = 1; n < 80; ++n) {
    term = term * a / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

TEST(Pauli, Algebra) {
  EXPECT_TRUE((pauli('x') * pauli('y')).isApprox(kI * pauli('z')));
  EXPECT_TRUE((pauli('y') * pauli('z')).isApprox(kI * pauli('x')));
  for (char a : {'x', 'y', 'z'}) {
    EXPECT_TRUE((pauli(a) * pauli(a)).isApprox(identity(2)));
    EXPECT_TRUE(spin_half(a).isApprox(0.5 * pauli(a)));
  }
  EXPECT_EQ(pauli('z')(0, 0), Complex(1.0));
  EXPECT_EQ(pauli('z')(1, 1), Complex(-1.0));
  EXPECT_THROW(pauli('w'), SpecError);
}

TEST(Embed, ElectronSigmaZOnFirstBasisState) {
  const Operator z = embed(pauli('z'), 0, {2, 2});
  StateVector one_up = StateVector::Zero(4);
  one_up(0) = 1.0;
  EXPECT_NEAR(expectation(one_up, z), 1.0, 1e-15);
}

TEST(Embed, IdentityAndSquare) {
  const Layout layout{2, 2, 2};
  EXPECT_TRUE(embed(identity(2), 1, layout).isApprox(identity(8)));
  const Operator x = embed(pauli('x'), 1, layout);
  EXPECT_TRUE((x * x).isApprox(identity(8)));
  EXPECT_TRUE(x.isApprox(kron(kron(identity(2), pauli('x')), identity(2))));
}

TEST(Embed, Errors) {
  EXPECT_THROW(embed(identity(3), 0, {2, 2}), DimensionError);
  EXPECT_THROW(embed(identity(2), 2, {2, 2}), DimensionError);
}

TEST(Embed, HomomorphismAndDistinctSitesCommute) {
  std::mt19937_64 gen(7);
  const Layout layout{2, 3, 2};
  const Operator a = random_hermitian(3, gen);
  const Operator b = random_hermitian(3, gen);
  EXPECT_TRUE(embed(a * b, 1, layout).isApprox(embed(a, 1, layout) * embed(b, 1, layout)));
  const Operator c = embed(random_hermitian(2, gen), 0, layout);
  const Operator d = embed(a, 1, layout);
  EXPECT_LT((c * d - d * c).norm(), 1e-14);
}

TEST(PauliString, Properties) {
  const Layout layout{2, 2, 2, 2};
  EXPECT_TRUE(pauli_string({}, layout).isApprox(identity(16)));
  const Operator zzz = pauli_string({{1, 'z'}, {2, 'z'}, {3, 'z'}}, layout);
  StateVector down = StateVector::Zero(16);
  down(7) = 1.0;  // |1>|down down down>
  EXPECT_NEAR(expectation(down, zzz), -1.0, 1e-15);
  const Operator s = pauli_string({{0, 'y'}, {2, 'x'}}, layout);
  EXPECT_TRUE((s * s).isApprox(identity(16)));
  EXPECT_LT(std::abs(s.trace()), 1e-14);
  EXPECT_LT(hermiticity_error(s), 1e-15);
  EXPECT_THROW(pauli_string({{0, 'q'}}, layout), SpecError);
}

TEST(Propagator, DiagonalCase) {
  const double w = 2.3e6;
  const double t = 4.1e-7;
  const Operator u = propagator(0.5 * w * pauli('z'), t);
  EXPECT_NEAR(std::abs(u(0, 0) - std::polar(1.0, -0.5 * w * t)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(u(1, 1) - std::polar(1.0, 0.5 * w * t)), 0.0, 1e-13);
  EXPECT_TRUE(propagator(pauli('x'), 0.0).isApprox(identity(2)));
}

TEST(Propagator, RejectsNonHermitian) {
  Operator h = pauli('x');
  h(0, 1) = 2.0;
  EXPECT_THROW(propagator(h, 1.0), HermiticityError);
}

TEST(Propagator, MatchesSeriesAndGroupLaws) {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 2 + trial % 7;
    const Operator h = random_hermitian(dim, gen);
    const double t1 = 0.3 + 0.01 * trial;
    const double t2 = -0.17;
    const Operator u1 = propagator(h, t1);
    EXPECT_LT((u1 - taylor_exp(-kI * h * t1)).norm(), 1e-11);
    EXPECT_LT(unitarity_error(u1), 1e-10 * dim);
    EXPECT_LT((u1 * propagator(h, t2) - propagator(h, t1 + t2)).norm(), 1e-12);
    EXPECT_LT((propagator(h, -t1) - u1.adjoint()).norm(), 1e-12);
  }
}

TEST(ExpI, PauliClosedForm) {
  const double a = 0.731;
  const Operator expected = std::cos(a) * identity(2) + kI * std::sin(a) * pauli('x');
  EXPECT_LT((exp_i(pauli('x'), a) - expected).norm(), 1e-14);
}

TEST(HermitianEvolution, AgreesWithPropagator) {
  std::mt19937_64 gen(3);
  const Operator h = random_hermitian(8, gen);
  const HermitianEvolution ev(h);
  const StateVector psi = random_state(8, gen);
  EXPECT_LT((ev.propagator(0.4) - propagator(h, 0.4)).norm(), 1e-12);
  EXPECT_LT((ev.apply(psi, 0.4) - propagator(h, 0.4) * psi).norm(), 1e-12);
  Operator u = propagator(h, 0.1);
  ev.apply_in_place(u, 0.2);
  EXPECT_LT((u - propagator(h, 0.3)).norm(), 1e-12);
}

TEST(Fidelity, StateExamples) {
  std::mt19937_64 gen(5);
  const StateVector psi = random_state(4, gen);
  EXPECT_NEAR(state_fidelity(psi, psi), 1.0, 1e-14);
  StateVector a = StateVector::Zero(2), b = StateVector::Zero(2);
  a(0) = 1.0;
  b(1) = 1.0;
  EXPECT_NEAR(state_fidelity(a, b), 0.0, 1e-15);
  StateVector yp(2), ym(2);
  yp << 1.0, kI;
  ym << 1.0, -kI;
  EXPECT_NEAR(state_fidelity(yp.normalized(), ym.normalized()), 0.0, 1e-15);
}

TEST(Fidelity, ProcessIsPhaseBlindAndMatchesBruteForce) {
  std::mt19937_64 gen(9);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator u = propagator(random_hermitian(4, gen), 1.0);
    const Operator v = propagator(random_hermitian(4, gen), 1.0);
    EXPECT_NEAR(process_fidelity(u, u), 1.0, 1e-13);
    EXPECT_NEAR(process_fidelity(u, std::polar(1.0, 0.9) * u), 1.0, 1e-13);
    Complex tr = 0.0;
    for (int i = 0; i < 4; ++i)
      for (int k = 0; k < 4; ++k) tr += std::conj(u(k, i)) * v(k, i);
    EXPECT_NEAR(process_fidelity(u, v), std::norm(tr) / 16.0, 1e-12);
  }
}

TEST(PartialTrace, ProductAndBell) {
  std::mt19937_64 gen(13);
  const StateVector a = random_state(2, gen);
  const StateVector b = random_state(3, gen);
  const DensityOperator rho = projector(kron(a, b).col(0));
  EXPECT_TRUE(partial_trace(rho, {0}, {2, 3}).isApprox(projector(a)));
  EXPECT_TRUE(partial_trace(rho, {1}, {2, 3}).isApprox(projector(b)));
  EXPECT_TRUE(partial_trace(rho, {0, 1}, {2, 3}).isApprox(rho));

  StateVector bell = StateVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(partial_trace(projector(bell), {1}, {2, 2}).isApprox(0.5 * identity(2)));
}

TEST(PartialTrace, IndexSummationOracle) {
  std::mt19937_64 gen(17);
  const Layout layout{2, 2, 2};
  const Operator m = random_hermitian(8, gen);
  const DensityOperator rho = propagator(m, 1.0) * projector(random_state(8, gen)) *
                              propagator(m, 1.0).adjoint();
  // Keep sites 0 and 2, sum over site 1.
  DensityOperator expected = DensityOperator::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c)
      for (int a2 = 0; a2 < 2; ++a2)
        for (int c2 = 0; c2 < 2; ++c2)
          for (int b = 0; b < 2; ++b)
            expected(2 * a + c, 2 * a2 + c2) += rho(4 * a + 2 * b + c, 4 * a2 + 2 * b + c2);
  const DensityOperator got = partial_trace(rho, {0, 2}, layout);
  EXPECT_LT((got - expected).norm(), 1e-14);
  EXPECT_NEAR(got.trace().real(), 1.0, 1e-12);
}

TEST(Density, Validation) {
  std::mt19937_64 gen(19);
  EXPECT_NO_THROW(validate_density(projector(random_state(4, gen))));
  EXPECT_NO_THROW(validate_density(0.25 * identity(4)));
  DensityOperator bad = DensityOperator::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  EXPECT_THROW(validate_density(bad), StateError);
  EXPECT_THROW(validate_density(0.4 * identity(2)), StateError);
  DensityOperator skew = 0.5 * identity(2);
  skew(0, 1) = 0.3;
  EXPECT_THROW(validate_density(skew), StateError);
}

}  // namespace
}  // namespace nvgate
