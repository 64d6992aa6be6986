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

#include "nmq/operator_core.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nmq {

double hermiticity_residual(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && hermiticity_residual(m) <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix g = m.adjoint() * m;
  g -= Matrix::Identity(m.rows(), m.cols());
  return g.cwiseAbs().maxCoeff() <= tol;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix identity(Eigen::Index d) { return Matrix::Identity(d, d); }

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix sigma_plus() {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1;
  return m;
}

Matrix sigma_minus() {
  Matrix m = Matrix::Zero(2, 2);
  m(1, 0) = 1;
  return m;
}

Vector ket_plus() {
  Vector v(2);
  v << 1, 1;
  return v / std::sqrt(2.0);
}

void DensityMatrix::check(double positivity_tol) const {
  if (mat.rows() != mat.cols()) throw std::invalid_argument("state not square");
  Eigen::Index prod = 1;
  for (auto d : dims) prod *= d;
  if (prod != mat.rows())
    throw std::invalid_argument("subsystem dims do not multiply to dim");
  double herm = hermiticity_residual(mat);
  if (herm > 1e-10) {
    std::ostringstream os;
    os << "state not Hermitian, residual " << herm;
    throw std::invalid_argument(os.str());
  }
  double trace_err = std::abs(mat.trace() - Complex(1.0));
  if (trace_err > 1e-10) {
    std::ostringstream os;
    os << "state trace deviates from 1 by " << trace_err;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -positivity_tol) {
    std::ostringstream os;
    os << "state has eigenvalue " << es.eigenvalues().minCoeff();
    throw std::invalid_argument(os.str());
  }
}

DensityMatrix pure_state(const Vector& psi, std::vector<Eigen::Index> dims) {
  Vector v = psi / psi.norm();
  DensityMatrix rho{v * v.adjoint(), std::move(dims)};
  rho.check();
  return rho;
}

BasisSet pauli_basis(int n_qubits) {
  if (n_qubits < 1) throw std::invalid_argument("n_qubits must be >= 1");
  const Matrix single[4] = {identity(2), pauli_x(), pauli_y(), pauli_z()};
  Eigen::Index count = 1;
  for (int q = 0; q < n_qubits; ++q) count *= 4;
  BasisSet basis{n_qubits, {}};
  basis.ops.reserve(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < count; ++i) {
    // base-4 digits, first qubit most significant
    Eigen::Index rem = i;
    Eigen::Index place = count / 4;
    Matrix op = single[rem / place];
    rem %= place;
    for (int q = 1; q < n_qubits; ++q) {
      place /= 4;
      op = kron(op, single[rem / place]);
      rem %= place;
    }
    basis.ops.push_back(std::move(op));
  }
  return basis;
}

EigenDecomposition hermitian_eigendecompose(const Matrix& m) {
  double herm = hermiticity_residual(m);
  if (m.rows() != m.cols() || herm > 1e-10) {
    std::ostringstream os;
    os << "matrix not Hermitian, residual " << herm;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition failed");
  Matrix u = es.eigenvectors();
  for (Eigen::Index l = 0; l < u.cols(); ++l) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      double a = std::abs(u(i, l));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best > 0.0) u.col(l) *= std::conj(u(imax, l)) / best;
  }
  return {es.eigenvalues(), std::move(u)};
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t keep) {
  if (rho.dims.size() < 2)
    throw std::invalid_argument("partial_trace needs >= 2 subsystems");
  if (keep >= rho.dims.size())
    throw std::invalid_argument("subsystem index out of range");
  const auto& dims = rho.dims;
  const std::size_t m = dims.size();
  std::vector<Eigen::Index> stride(m, 1);
  for (std::size_t i = m - 1; i > 0; --i) stride[i - 1] = stride[i] * dims[i];
  Eigen::Index dk = dims[keep];
  Eigen::Index rest = rho.dim() / dk;
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b)
      for (Eigen::Index r = 0; r < rest; ++r) {
        // decode r over the traced-out subsystems
        Eigen::Index row = a * stride[keep], col = b * stride[keep];
        Eigen::Index rem = r;
        for (std::size_t i = m; i-- > 0;) {
          if (i == keep) continue;
          Eigen::Index idx = rem % dims[i];
          rem /= dims[i];
          row += idx * stride[i];
          col += idx * stride[i];
        }
        out(a, b) += rho.mat(row, col);
      }
  return DensityMatrix{std::move(out), {dk}};
}

Matrix maximally_entangled_state(Eigen::Index d) {
  Vector phi = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) phi(i * d + i) = 1.0;
  phi /= std::sqrt(static_cast<double>(d));
  return phi * phi.adjoint();
}

}  // namespace nmq
