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

#include "nvgate/operator_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nvgate/errors.h"

namespace nvgate {

int layout_dim(const Layout& layout) {
  int d = 1;
  for (int n : layout) {
    if (n <= 0) throw DimensionError("layout entries must be positive");
    d *= n;
  }
  return d;
}

Operator identity(int dim) { return Operator::Identity(dim, dim); }

Operator pauli(char axis) {
  Operator p(2, 2);
  switch (axis) {
    case 'x':
      p << 0, 1, 1, 0;
      break;
    case 'y':
      p << 0, -kI, kI, 0;
      break;
    case 'z':
      p << 1, 0, 0, -1;
      break;
    default:
      throw SpecError(std::string("invalid Pauli axis '") + axis + "'");
  }
  return p;
}

Operator spin_half(char axis) { return 0.5 * pauli(axis); }

Operator kron(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Operator embed(const Operator& local, int site, const Layout& layout) {
  if (site < 0 || site >= static_cast<int>(layout.size())) {
    throw DimensionError("embed: site " + std::to_string(site) +
                         " outside layout");
  }
  if (local.rows() != layout[site] || local.cols() != layout[site]) {
    throw DimensionError("embed: operator dim does not match layout[" +
                         std::to_string(site) + "]");
  }
  int before = 1;
  int after = 1;
  for (int s = 0; s < site; ++s) before *= layout[s];
  for (std::size_t s = site + 1; s < layout.size(); ++s) after *= layout[s];
  return kron(kron(identity(before), local), identity(after));
}

Operator pauli_string(const std::map<int, char>& axes, const Layout& layout) {
  Operator out = identity(layout_dim(layout));
  for (const auto& [site, axis] : axes) {
    if (layout.at(site) != 2) {
      throw DimensionError("pauli_string: site is not a qubit");
    }
    out = out * embed(pauli(axis), site, layout);
  }
  return out;
}

double hermiticity_error(const Operator& h) {
  if (h.rows() != h.cols()) throw DimensionError("operator is not square");
  double norm = h.norm();
  if (norm == 0.0) return 0.0;
  return (h - h.adjoint()).norm() / norm;
}

double unitarity_error(const Operator& u) {
  return (u.adjoint() * u - identity(static_cast<int>(u.rows()))).norm();
}

namespace {

void require_hermitian(const Operator& h) {
  double err = hermiticity_error(h);
  if (err > 1e-12) {
    throw HermiticityError("Hamiltonian is not Hermitian (relative error " +
                           std::to_string(err) + ")");
  }
}

}  // namespace

HermitianEvolution::HermitianEvolution(const Operator& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Operator> solver(0.5 * (h + h.adjoint()));
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  // One Newton-Schulz step pulls the basis back to orthonormal at the ulp
  // level; long pulse trains otherwise accumulate the solver's residual.
  const Operator gram = vectors_.adjoint() * vectors_;
  const int n = static_cast<int>(vectors_.cols());
  vectors_ = vectors_ * (1.5 * identity(n) - 0.5 * gram);
}

Operator HermitianEvolution::propagator(double t) const {
  if (t == 0.0) return identity(static_cast<int>(vectors_.rows()));
  Eigen::VectorXcd phases(values_.size());
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    phases(i) = std::polar(1.0, -values_(i) * t);
  }
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

StateVector HermitianEvolution::apply(const StateVector& psi,
                                      double t) const {
  if (psi.size() != vectors_.rows()) {
    throw DimensionError("state dimension does not match Hamiltonian");
  }
  StateVector c = vectors_.adjoint() * psi;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    c(i) *= std::polar(1.0, -values_(i) * t);
  }
  return vectors_ * c;
}

void HermitianEvolution::apply_in_place(Operator& u, double t) const {
  Operator c = vectors_.adjoint() * u;
  for (Eigen::Index i = 0; i < values_.size(); ++i) {
    c.row(i) *= std::polar(1.0, -values_(i) * t);
  }
  u.noalias() = vectors_ * c;
}

Operator propagator(const Operator& h, double t) {
  return HermitianEvolution(h).propagator(t);
}

Operator exp_i(const Operator& g, double angle) { return propagator(g, -angle); }

double state_fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.size() != phi.size()) throw DimensionError("state dims differ");
  return std::norm(psi.dot(phi));
}

double process_fidelity(const Operator& u, const Operator& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw DimensionError("operator dims differ");
  }
  double d = static_cast<double>(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

DensityOperator projector(const StateVector& psi) {
  return psi * psi.adjoint();
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep,
                              const Layout& layout) {
  const int n = static_cast<int>(layout.size());
  const int dim = layout_dim(layout);
  if (rho.rows() != dim || rho.cols() != dim) {
    throw DimensionError("partial_trace: rho does not match layout");
  }
  std::vector<bool> kept(n, false);
  for (int s : keep) {
    if (s < 0 || s >= n) throw DimensionError("partial_trace: bad site");
    kept[s] = true;
  }
  // Strides of each site in the global index (row-major, site 0 slowest).
  std::vector<int> stride(n, 1);
  for (int s = n - 2; s >= 0; --s) stride[s] = stride[s + 1] * layout[s + 1];

  std::vector<int> kept_sites;
  std::vector<int> traced_sites;
  for (int s = 0; s < n; ++s) (kept[s] ? kept_sites : traced_sites).push_back(s);

  auto offsets = [&](const std::vector<int>& sites) {
    std::vector<int> out{0};
    for (int s : sites) {
      std::vector<int> next;
      next.reserve(out.size() * layout[s]);
      for (int base : out) {
        for (int v = 0; v < layout[s]; ++v) next.push_back(base + v * stride[s]);
      }
      out.swap(next);
    }
    return out;
  };
  const std::vector<int> kept_off = offsets(kept_sites);
  const std::vector<int> traced_off = offsets(traced_sites);

  const int kd = static_cast<int>(kept_off.size());
  DensityOperator out = DensityOperator::Zero(kd, kd);
  for (int i = 0; i < kd; ++i) {
    for (int j = 0; j < kd; ++j) {
      Complex acc = 0.0;
      for (int r : traced_off) acc += rho(kept_off[i] + r, kept_off[j] + r);
      out(i, j) = acc;
    }
  }
  return out;
}

void validate_density(const DensityOperator& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw StateError("density operator must be square and non-empty");
  }
  if ((rho - rho.adjoint()).norm() > 1e-12) {
    throw StateError("density operator is not Hermitian");
  }
  if (std::abs(rho.trace() - Complex(1.0)) > 1e-12) {
    throw StateError("density operator trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<DensityOperator> solver(
      0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -1e-10) {
    throw StateError("density operator is not positive semidefinite");
  }
}

double expectation(const StateVector& psi, const Operator& observable) {
  return psi.dot(observable * psi).real();
}

}  // namespace nvgate
