// Copyright 2026 The nmqem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace nmq {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

double hermiticity_residual(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_unitary(const Matrix& m, double tol = 1e-10);

Matrix kron(const Matrix& a, const Matrix& b);

/// Sum of singular values.
double trace_norm(const Matrix& m);

Matrix identity(Eigen::Index d);
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
// Convention: Z|0> = +|0>, sigma+ = (X+iY)/2 = |0><1|.
Matrix sigma_plus();
Matrix sigma_minus();
// |+> = (|0>+|1>)/sqrt(2)
Vector ket_plus();

/// Unit-trace Hermitian state, possibly a tensor product of subsystems.
struct DensityMatrix {
  Matrix mat;
  std::vector<Eigen::Index> dims;

  Eigen::Index dim() const { return mat.rows(); }
  /// Throws std::invalid_argument on Hermiticity/trace/positivity/dims
  /// violation. Positivity tolerance is relaxed for transiently non-CP
  /// reduced states.
  void check(double positivity_tol = 1e-8) const;
};

DensityMatrix pure_state(const Vector& psi, std::vector<Eigen::Index> dims);

/// d^2 Hermitian involutions with G_0 = I and Tr[G_i G_j] = d delta_ij.
struct BasisSet {
  int n_qubits;
  std::vector<Matrix> ops;

  Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

/// The 4^n Pauli products in lexicographic I<X<Y<Z order, first qubit most
/// significant.
BasisSet pauli_basis(int n_qubits);

struct EigenDecomposition {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // unitary, column l pairs with values[l]
};

/// M = U diag(values) U^dagger with a deterministic column-phase convention:
/// the largest-magnitude entry of each eigenvector is made real positive.
EigenDecomposition hermitian_eigendecompose(const Matrix& m);

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep);

/// |Phi><Phi| with |Phi> = sum_i |ii> / sqrt(d), on the d^2-dim doubled space.
Matrix maximally_entangled_state(Eigen::Index d);

}  // namespace nmq
