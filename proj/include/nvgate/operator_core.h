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

// Dense complex linear algebra on small spin registers.
//
// Basis convention: factor 0 is the electron with ordered basis (|1>, |0>),
// every nucleus is ordered (|up>, |down>), and sigma_z = diag(1, -1).
// Frequencies are angular (rad/s) and times are in seconds.

#ifndef NVGATE_OPERATOR_CORE_H_
#define NVGATE_OPERATOR_CORE_H_

#include <complex>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace nvgate {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using DensityOperator = Eigen::MatrixXcd;

// Subsystem dimensions, electron first.
using Layout = std::vector<int>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr Complex kI{0.0, 1.0};

int layout_dim(const Layout& layout);

Operator identity(int dim);

// 2x2 Pauli matrix for axis in {'x','y','z'}; throws SpecError otherwise.
Operator pauli(char axis);

// Spin-1/2 operator I = sigma / 2.
Operator spin_half(char axis);

Operator kron(const Operator& a, const Operator& b);

Operator embed(const Operator& local, int site, const Layout& layout);

// Product of embedded Pauli matrices. Empty map gives the identity.
Operator pauli_string(const std::map<int, char>& axes, const Layout& layout);

// ||H - H^dagger||_F relative to ||H||_F (0 for the zero matrix).
double hermiticity_error(const Operator& h);

// ||U^dagger U - 1||_F.
double unitarity_error(const Operator& u);

// exp(-i H t) by Hermitian eigendecomposition.
Operator propagator(const Operator& h, double t);

// exp(i angle G) for Hermitian G.
Operator exp_i(const Operator& g, double angle);

// Keeps the eigendecomposition of one Hermitian operator so that repeated
// evolutions under it cost two matrix products.
class HermitianEvolution {
 public:
  explicit HermitianEvolution(const Operator& h);

  Operator propagator(double t) const;
  StateVector apply(const StateVector& psi, double t) const;
  void apply_in_place(Operator& u, double t) const;

  const Eigen::VectorXd& eigenvalues() const { return values_; }
  const Operator& eigenvectors() const { return vectors_; }

 private:
  Eigen::VectorXd values_;
  Operator vectors_;
};

double state_fidelity(const StateVector& psi, const StateVector& phi);

// |Tr(U^dagger V)|^2 / dim^2.
double process_fidelity(const Operator& u, const Operator& v);

DensityOperator projector(const StateVector& psi);

// Traces out every site not listed in keep. Kept sites stay in layout order.
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep,
                              const Layout& layout);

// Throws StateError unless rho is Hermitian, unit-trace and PSD within
// the documented tolerances.
void validate_density(const DensityOperator& rho);

double expectation(const StateVector& psi, const Operator& observable);

}  // namespace nvgate

#endif  // NVGATE_OPERATOR_CORE_H_
