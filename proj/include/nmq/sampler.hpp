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

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "nmq/operator_core.hpp"

namespace nmq {

/// Signed single-step recovery decomposition E = sum_i mu_i (op_i . op_i^dag)
/// with sampling cost c = sum_i |mu_i|.
struct RecoveryOperation {
  double t = 0.0;
  std::vector<std::pair<double, Matrix>> terms;  // (mu_i, op_i)
  double cost_factor = 1.0;

  /// p_i = |mu_i| / c.
  std::vector<double> probabilities() const;
};

/// Single-step inverse of a dephasing step with rate `gamma` (the prefactor
/// of (Z rho Z - rho)/2): an identity term and a Z term whose weight carries
/// -sgn(gamma). For gamma < 0 both weights are nonnegative and c = 1, so the
/// operation is a physical channel with no sampling cost.
RecoveryOperation dephasing_recovery(double gamma, double delta_t);

/// Counter-based stream: trajectory `index` under `seed` always produces the
/// same sequence, independent of execution order. splitmix64 core.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t index);

  std::uint64_t next();
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Exponential with unit mean.
  double exponential();

 private:
  std::uint64_t state_;
};

/// Inhomogeneous Poisson sample on [0, T] by thinning against `rate_bound`.
/// Throws if `rate` is ever observed above the bound.
std::vector<double> sample_jump_times(const std::function<double(double)>& rate,
                                      double T, double rate_bound,
                                      RngStream& rng);

/// Single-qubit dephasing-type noise model in canonical form:
/// drho/dt = -i[(S/2)Z, rho] + gamma_c(t)(Z rho Z - rho), so the coherence
/// obeys rho_01' = -(2 gamma_c + i S) rho_01.
struct DephasingModel {
  std::function<double(double)> canonical_rate;  // s^-1, may be negative
  std::function<double(double)> lamb_shift;      // rad/s
};

struct MitigatedEstimate {
  double mean = 0.0;       // cost-rescaled estimate of the ideal value
  double std_error = 0.0;  // cost * sample-std / sqrt(n)
  double cost = 1.0;       // C(T)
  long long n_trajectories = 0;
  std::uint64_t seed = 0;
  long long n_plus = 0;   // trajectories with positive sign weight
  long long n_minus = 0;  // trajectories with negative sign weight
};

/// Sign-weighted Monte Carlo estimate of the ideal expectation value of a
/// Hermitian qubit observable at time T, from the noisy dephasing dynamics.
/// Per trajectory: jump times from |gamma_c| by thinning, sign weight
/// prod(-sgn gamma_c(t_j)), one measurement outcome sampled from the
/// jump-conditioned noisy state; the sample mean is rescaled by
/// C(T) = exp[int (|gamma_c| + gamma_c) dt]. Deterministic for a fixed seed
/// regardless of thread count.
MitigatedEstimate run_mitigated_estimate(const DephasingModel& model,
                                         const Matrix& observable, double T,
                                         long long n, std::uint64_t seed);

/// Tr[rho_I(T) observable] under the unitary part alone (rates forced to 0),
/// starting from |+><+|.
double ideal_expectation(const DephasingModel& model, const Matrix& observable,
                         double T);

}  // namespace nmq
