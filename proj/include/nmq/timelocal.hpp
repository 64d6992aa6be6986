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

#include <functional>
#include <vector>

#include "nmq/operator_core.hpp"

namespace nmq {

struct Channel {
  std::function<Matrix(double)> jump;
  std::function<double(double)> rate;  // s^-1, may be negative
};

/// Right-hand side data of the canonical time-local master equation:
/// drho/dt = -i[H, rho] + sum_k gamma_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2).
///
/// Jumps are stored as given by the model; `canonical_normalized` records
/// whether rates already refer to unit-Frobenius-norm jumps. The process
/// matrix builder renormalizes explicitly either way.
struct TimeLocalGenerator {
  Eigen::Index dim = 0;
  std::function<Matrix(double)> hamiltonian;  // Hermitian, rad/s
  std::vector<Channel> channels;
  bool canonical_normalized = false;
};

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 0.0;
  int n_steps = 0;

  double step() const { return (t1 - t0) / n_steps; }
  double time(int i) const { return t0 + step() * i; }
  void check() const;
};

struct StateTrajectory {
  TimeGrid grid;
  std::vector<DensityMatrix> states;  // n_steps + 1 entries
};

/// Default resolution: 4000 steps per unit of (max rate x duration), at
/// least 1000.
int default_steps(double max_rate, double duration);

Matrix master_rhs(const TimeLocalGenerator& gen, double t, const Matrix& rho);

/// Fixed-step classical RK4. Throws IntegrationError if the trace drifts
/// by more than 1e-6 at any step.
StateTrajectory evolve(const TimeLocalGenerator& gen, const DensityMatrix& rho0,
                       const TimeGrid& grid);

/// Single-qubit dephasing-type generator: H = (S(t)/2) Z plus a Z channel.
/// `gamma` is the prefactor of (Z rho Z - rho)/2, i.e. the rate appearing in
/// the dephasing form of the master equation; its canonical (unit-jump) rate
/// is gamma/2.
TimeLocalGenerator dephasing_generator(std::function<double(double)> gamma,
                                       std::function<double(double)> lamb_shift);

}  // namespace nmq
