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

#include "nmq/timelocal.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nmq/errors.hpp"

namespace nmq {

void TimeGrid::check() const {
  if (!(t1 > t0) || t0 < 0.0)
    throw std::invalid_argument("time grid needs t1 > t0 >= 0");
  if (n_steps < 1) throw std::invalid_argument("time grid needs n_steps >= 1");
}

int default_steps(double max_rate, double duration) {
  double n = 4000.0 * max_rate * duration;
  if (n < 1000.0) return 1000;
  return static_cast<int>(std::ceil(n));
}

Matrix master_rhs(const TimeLocalGenerator& gen, double t, const Matrix& rho) {
  if (rho.rows() != gen.dim || rho.cols() != gen.dim)
    throw std::invalid_argument("state dimension does not match generator");
  Matrix out = Matrix::Zero(gen.dim, gen.dim);
  if (gen.hamiltonian) {
    Matrix h = gen.hamiltonian(t);
    out.noalias() = Complex(0, -1) * (h * rho - rho * h);
  }
  for (const auto& ch : gen.channels) {
    double g = ch.rate(t);
    if (g == 0.0) continue;
    Matrix l = ch.jump(t);
    Matrix ldl = l.adjoint() * l;
    out.noalias() += g * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

StateTrajectory evolve(const TimeLocalGenerator& gen, const DensityMatrix& rho0,
                       const TimeGrid& grid) {
  grid.check();
  rho0.check();
  if (rho0.dim() != gen.dim)
    throw std::invalid_argument("initial state dimension does not match generator");
  const double h = grid.step();
  StateTrajectory traj{grid, {}};
  traj.states.reserve(grid.n_steps + 1);
  traj.states.push_back(rho0);
  Matrix rho = rho0.mat;
  for (int i = 0; i < grid.n_steps; ++i) {
    const double t = grid.time(i);
    Matrix k1 = master_rhs(gen, t, rho);
    Matrix k2 = master_rhs(gen, t + h / 2, rho + (h / 2) * k1);
    Matrix k3 = master_rhs(gen, t + h / 2, rho + (h / 2) * k2);
    Matrix k4 = master_rhs(gen, t + h, rho + h * k3);
    rho += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    double drift = std::abs(rho.trace() - Complex(1.0));
    if (drift > 1e-6) {
      std::ostringstream os;
      os << "trace drifted by " << drift << " at step " << (i + 1) << " (t = "
         << grid.time(i + 1) << ")";
      throw IntegrationError(i + 1, grid.time(i + 1), os.str());
    }
    traj.states.push_back(DensityMatrix{rho, rho0.dims});
  }
  return traj;
}

TimeLocalGenerator dephasing_generator(std::function<double(double)> gamma,
                                       std::function<double(double)> lamb_shift) {
  TimeLocalGenerator gen;
  gen.dim = 2;
  Matrix z = pauli_z();
  if (lamb_shift) {
    gen.hamiltonian = [lamb_shift, z](double t) -> Matrix {
      return (lamb_shift(t) / 2.0) * z;
    };
  } else {
    gen.hamiltonian = [](double) { return Matrix::Zero(2, 2); };
  }
  // (gamma/2)(Z rho Z - rho) == canonical rate gamma/2 with unitary jump Z
  gen.channels.push_back(
      Channel{[z](double) { return z; },
              [gamma](double t) { return gamma(t) / 2.0; }});
  return gen;
}

}  // namespace nmq
