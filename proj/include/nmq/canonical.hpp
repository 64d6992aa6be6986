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
#include <utility>
#include <vector>

#include "nmq/operator_core.hpp"
#include "nmq/rate_trace.hpp"
#include "nmq/timelocal.hpp"

namespace nmq {

/// Hermitian d^2 x d^2 matrix M(t) such that the dissipator equals
/// sum_ij M_ij Gn_i rho Gn_j with Gn_i = G_i / sqrt(d) the orthonormalized
/// basis operators. With that normalization the identity-slot entry is
/// M_00 = -sum_k gamma_k and, for unitary jumps, the nonzero eigenvalues are
/// exactly the channel rates.
struct ProcessMatrix {
  double t = 0.0;
  Matrix m;
  BasisSet basis;
};

struct CanonicalDecomposition {
  double t = 0.0;
  Eigen::VectorXd q;            // canonical eigenvalues, ascending
  std::vector<Matrix> b_ops;    // B_l = sum_i u_il G_i / sqrt(d)
  Matrix u;                     // diagonalizing unitary
  /// |u_0l|: overlap of eigenvector l with the identity slot.
  Eigen::VectorXd identity_overlap() const;
};

/// Dissipator part only; the Hamiltonian commutator is handled separately by
/// the evolution. Jumps are renormalized to unit Frobenius norm internally,
/// with rates rescaled to compensate.
ProcessMatrix build_process_matrix(const TimeLocalGenerator& gen, double t,
                                   const BasisSet& basis);

CanonicalDecomposition canonical_rates(const ProcessMatrix& pm);

/// Apply the decomposition, sum_l q_l B_l rho B_l^dag. Test hook for the
/// reconstruction invariant.
Matrix apply_decomposition(const CanonicalDecomposition& cd, const Matrix& rho);

/// Divergence threshold for coherence-based rate extraction.
inline constexpr double kCoherenceDivergenceEps = 1e-9;

/// gamma(t) = -Re[c'/c], S(t) = -Im[c'/c] from a sampled coherence factor
/// c(t_j) with c(0) = 1, using 4th-order finite differences (one-sided at
/// the ends). Throws DivergenceError where |c| <= 1e-9.
RateTrace extract_dephasing_rates(const std::vector<Complex>& coherence,
                                  const std::vector<double>& times);

/// True iff every sampled rate is >= -1e-10 * max|gamma|. Violation
/// intervals are located by sign-change bisection on the cubic interpolant
/// and merged across channels.
std::pair<bool, std::vector<std::pair<double, double>>> is_cp_divisible(
    const RateTrace& rates);

}  // namespace nmq
