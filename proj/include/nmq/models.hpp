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

#include <utility>
#include <vector>

#include "nmq/operator_core.hpp"
#include "nmq/sampler.hpp"
#include "nmq/timelocal.hpp"

namespace nmq {

/// Two-qubit model: a probed qubit J-coupled to a partner qubit that relaxes
/// into a thermal environment. Partner-side channels sigma_+ (rate 2*gamma*s)
/// and sigma_- (rate 2*gamma*(1-s)) in the (gamma_k/4)(2 L rho Ldag - ...)
/// form; s in [0, 1/2] encodes the bath temperature.
struct NmrParams {
  double J = 0.0;      // rad/s, qubit-qubit coupling
  double gamma = 0.0;  // s^-1, partner relaxation rate
  double s = 0.0;      // dimensionless, [0, 1/2]

  /// Throws std::invalid_argument on invalid ranges. s = 1/2 is accepted but
  /// known to drive |f| through zero, where rate extraction diverges.
  void check() const;
};

/// Roots of lambda^2 + gamma*lambda + [2iJ*gamma*(1-2s) + J^2]/4 = 0,
/// ordered so the first has the larger real part (tie: larger imaginary).
std::pair<Complex, Complex> nmr_lambda_pm(const NmrParams& p);

/// Coherence factor f(t) with f(0) = 1; the probed qubit's normalized
/// coherence is conj(f(t)). Near-degenerate roots switch to a confluent
/// series branch.
Complex nmr_f(const NmrParams& p, double t);
Complex nmr_f_derivative(const NmrParams& p, double t);

/// (gamma(t), S(t)) from gamma - iS = -f'/f, using the analytic derivative.
/// Throws DivergenceError when |f| <= 1e-9.
std::pair<double, double> nmr_rates(const NmrParams& p, double t);

/// Full two-qubit generator: H = (J/4) Z (x) Z plus the partner relaxation
/// channels in canonical form.
TimeLocalGenerator nmr_generator(const NmrParams& p);

/// rho_Gibbs = s|0><0| + (1-s)|1><1|, the fixed point of the partner
/// dissipator.
Matrix nmr_gibbs_state(const NmrParams& p);

struct ModelOracle {
  std::vector<double> times;
  std::vector<DensityMatrix> reduced;  // probed-qubit states
  std::vector<Complex> coherence;      // rho_01(t) / rho_01(0)
};

/// Evolves |+><+| (x) rho_Gibbs on the grid and reduces to the probed qubit.
ModelOracle nmr_full_oracle(const NmrParams& p, const TimeGrid& grid);

/// Dephasing-form reduction for the sampler: canonical rate gamma(t)/2 and
/// Lamb shift S(t) from nmr_rates.
DephasingModel nmr_dephasing_model(const NmrParams& p);

/// Qubit dispersively coupled to a lossy resonator: H = chi Z a^dag a,
/// photon decay kappa, initial coherent amplitude alpha. n_max is the top
/// retained Fock level; 0 selects the cutoff rule
/// ceil(|alpha|^2 + 8|alpha| + 10).
struct DispersiveParams {
  double chi = 0.0;    // rad/s
  double kappa = 0.0;  // s^-1
  Complex alpha = 0.0;
  int n_max = 0;

  int effective_n_max() const;
  void check() const;
};

/// (gamma(t), S(t)) of the closed-form damped-oscillation rate expressions.
/// See dispersive_solution_rates for the forms consistent with the exact
/// reduced coherence; the full-simulation oracle arbitrates between them.
std::pair<double, double> dispersive_rates(const DispersiveParams& p, double t);

/// Normalized qubit coherence from the closed-form expressions, including
/// the stated c'_01 = c_01 * e^{(2i chi - kappa)t} reduction (which gives
/// e^{(2i chi - kappa)t} even for alpha = 0; kept as stated, the oracle is
/// ground truth).
Complex dispersive_coherence(const DispersiveParams& p, double t);

/// Exact reduced coherence of the master equation,
/// exp[-|alpha|^2 (1 - e^{-(2i chi + kappa)t}) / (1 - i kappa/2chi)].
Complex dispersive_solution_coherence(const DispersiveParams& p, double t);

/// Rates of the exact solution: gamma = 2 chi |alpha|^2 e^{-kappa t} sin 2chi t,
/// S = 2 chi |alpha|^2 e^{-kappa t} cos 2chi t.
std::pair<double, double> dispersive_solution_rates(const DispersiveParams& p,
                                                    double t);

/// Pointwise bound on |gamma(t)| from the damped-oscillation form.
double dispersive_envelope_bound(const DispersiveParams& p, double t);

/// Fock-truncated qubit+resonator generator with the kappa photon-loss
/// channel in canonical form.
TimeLocalGenerator dispersive_generator(const DispersiveParams& p);

/// Evolves |+><+| (x) |alpha><alpha| and reduces to the qubit. Throws
/// TruncationError if the top two Fock levels ever exceed 1e-8 population.
ModelOracle dispersive_full_oracle(const DispersiveParams& p,
                                   const TimeGrid& grid);

}  // namespace nmq
