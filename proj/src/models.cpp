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

#include "nmq/models.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nmq/errors.hpp"

namespace nmq {

void NmrParams::check() const {
  if (!(J > 0.0)) throw std::invalid_argument("J must be positive");
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be nonnegative");
  if (!(s >= 0.0 && s <= 0.5))
    throw std::invalid_argument("s must lie in [0, 1/2]");
}

std::pair<Complex, Complex> nmr_lambda_pm(const NmrParams& p) {
  p.check();
  const Complex c =
      (Complex(0.0, 2.0 * p.J * p.gamma * (1.0 - 2.0 * p.s)) + p.J * p.J) / 4.0;
  const Complex disc = std::sqrt(Complex(p.gamma * p.gamma) - 4.0 * c);
  Complex lp = (-p.gamma + disc) / 2.0;
  Complex lm = (-p.gamma - disc) / 2.0;
  if (lp.real() < lm.real() ||
      (lp.real() == lm.real() && lp.imag() < lm.imag()))
    std::swap(lp, lm);
  return {lp, lm};
}

namespace {

struct NmrTerms {
  Complex exp_mean;  // e^{lambda_bar t}
  Complex growth;    // (e^{l+ t} - e^{l- t}) / delta
  Complex balanced;  // (l- e^{l+ t} - l+ e^{l- t}) / delta
  Complex sym;       // (l+ e^{l+ t} - l- e^{l- t}) / delta
};

NmrTerms nmr_terms(const NmrParams& p, double t) {
  auto [lp, lm] = nmr_lambda_pm(p);
  const Complex delta = lp - lm;
  const Complex mean = (lp + lm) / 2.0;
  NmrTerms out;
  out.exp_mean = std::exp(mean * t);
  if (std::abs(delta) < 1e-8 * (std::abs(lp) + std::abs(lm) + 1e-300)) {
    const Complex z = delta * t / 2.0;
    const Complex z2 = z * z;
    const Complex sinhc = 1.0 + z2 / 6.0 + z2 * z2 / 120.0;
    const Complex cosh = 1.0 + z2 / 2.0 + z2 * z2 / 24.0;
    out.growth = t * sinhc * out.exp_mean;
    out.balanced = (mean * t * sinhc - cosh) * out.exp_mean;
    out.sym = (mean * t * sinhc + cosh) * out.exp_mean;
  } else {
    const Complex ep = std::exp(lp * t), em = std::exp(lm * t);
    out.growth = (ep - em) / delta;
    out.balanced = (lm * ep - lp * em) / delta;
    out.sym = (lp * ep - lm * em) / delta;
  }
  return out;
}

Complex nmr_amp(const NmrParams& p) {
  return Complex(0.0, p.J * (2.0 * p.s - 1.0) / 2.0);
}

}  // namespace

Complex nmr_f(const NmrParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  auto terms = nmr_terms(p, t);
  return nmr_amp(p) * terms.growth - terms.balanced;
}

Complex nmr_f_derivative(const NmrParams& p, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  auto [lp, lm] = nmr_lambda_pm(p);
  auto terms = nmr_terms(p, t);
  return nmr_amp(p) * terms.sym - lp * lm * terms.growth;
}

std::pair<double, double> nmr_rates(const NmrParams& p, double t) {
  const Complex f = nmr_f(p, t);
  if (std::abs(f) <= 1e-9) {
    std::ostringstream os;
    os << "|f| = " << std::abs(f) << " at t = " << t
       << "; the time-local rate diverges at a specific time point";
    throw DivergenceError(t, os.str());
  }
  const Complex w = -nmr_f_derivative(p, t) / f;
  return {w.real(), -w.imag()};
}

TimeLocalGenerator nmr_generator(const NmrParams& p) {
  p.check();
  TimeLocalGenerator gen;
  gen.dim = 4;
  const Matrix h = (p.J / 4.0) * kron(pauli_z(), pauli_z());
  gen.hamiltonian = [h](double) { return h; };
  const Matrix up = kron(identity(2), sigma_plus());
  const Matrix dn = kron(identity(2), sigma_minus());
  // (gamma_k/4)(2 L rho Ldag - {Ldag L, rho}) with gamma_1 = 2 gamma s,
  // gamma_2 = 2 gamma (1-s): canonical rates gamma_k / 2
  const double r1 = p.gamma * p.s;
  const double r2 = p.gamma * (1.0 - p.s);
  gen.channels.push_back({[up](double) { return up; }, [r1](double) { return r1; }});
  gen.channels.push_back({[dn](double) { return dn; }, [r2](double) { return r2; }});
  return gen;
}

Matrix nmr_gibbs_state(const NmrParams& p) {
  p.check();
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = p.s;
  g(1, 1) = 1.0 - p.s;
  return g;
}

ModelOracle nmr_full_oracle(const NmrParams& p, const TimeGrid& grid) {
  auto gen = nmr_generator(p);
  DensityMatrix rho0{kron(pure_state(ket_plus(), {2}).mat, nmr_gibbs_state(p)),
                     {2, 2}};
  auto traj = evolve(gen, rho0, grid);
  ModelOracle out;
  out.times.reserve(traj.states.size());
  out.reduced.reserve(traj.states.size());
  out.coherence.reserve(traj.states.size());
  Complex c0;
  for (int i = 0; i < static_cast<int>(traj.states.size()); ++i) {
    out.times.push_back(grid.time(i));
    out.reduced.push_back(partial_trace(traj.states[i], 0));
    Complex c = out.reduced.back().mat(0, 1);
    if (i == 0) c0 = c;
    out.coherence.push_back(c / c0);
  }
  return out;
}

DephasingModel nmr_dephasing_model(const NmrParams& p) {
  p.check();
  return DephasingModel{
      [p](double t) { return nmr_rates(p, t).first / 2.0; },
      [p](double t) { return nmr_rates(p, t).second; }};
}

int DispersiveParams::effective_n_max() const {
  if (n_max > 0) return n_max;
  const double a = std::abs(alpha);
  return static_cast<int>(std::ceil(a * a + 8.0 * a + 10.0));
}

void DispersiveParams::check() const {
  if (!(chi > 0.0)) throw std::invalid_argument("chi must be positive");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be nonnegative");
  const double a = std::abs(alpha);
  if (effective_n_max() < std::ceil(a * a + 8.0 * a + 10.0))
    throw std::invalid_argument("n_max below the Fock cutoff rule");
}

std::pair<double, double> dispersive_rates(const DispersiveParams& p,
                                           double t) {
  p.check();
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  const double a2 = std::norm(p.alpha);
  const double k = p.kappa, x = p.chi;
  const double env = a2 * std::exp(-k * t);
  const double r = k / (2.0 * x);
  const double cs = std::cos(2.0 * x * t), sn = std::sin(2.0 * x * t);
  const double s_val =
      env * (k * (1.0 - cs) - 2.0 * x * sn) +
      env / (1.0 + r * r) * (2.0 * k * cs + (2.0 * x - k * k / (2.0 * x)) * sn);
  const double g_val =
      env * k / (1.0 + r * r) * ((k / x) * cs + (1.0 - r * r) * sn);
  return {g_val, s_val};
}

Complex dispersive_coherence(const DispersiveParams& p, double t) {
  p.check();
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  const double a2 = std::norm(p.alpha);
  const Complex rot = Complex(-p.kappa, 2.0 * p.chi) * t;
  const Complex overlap =
      std::exp(a2 * std::exp(-p.kappa * t) * (std::exp(Complex(0.0, 2.0 * p.chi * t)) - 1.0));
  const Complex decay = std::exp(-a2 * (1.0 - std::exp(rot)) /
                                 (1.0 - Complex(0.0, p.kappa / (2.0 * p.chi))));
  return std::exp(rot) * decay / overlap;
}

Complex dispersive_solution_coherence(const DispersiveParams& p, double t) {
  p.check();
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  const double a2 = std::norm(p.alpha);
  const Complex rot = Complex(-p.kappa, -2.0 * p.chi) * t;
  return std::exp(-a2 * (1.0 - std::exp(rot)) /
                  (1.0 - Complex(0.0, p.kappa / (2.0 * p.chi))));
}

std::pair<double, double> dispersive_solution_rates(const DispersiveParams& p,
                                                    double t) {
  p.check();
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  const double env = 2.0 * p.chi * std::norm(p.alpha) * std::exp(-p.kappa * t);
  return {env * std::sin(2.0 * p.chi * t), env * std::cos(2.0 * p.chi * t)};
}

double dispersive_envelope_bound(const DispersiveParams& p, double t) {
  p.check();
  const double a2 = std::norm(p.alpha);
  const double r = p.kappa / (2.0 * p.chi);
  const double rr = p.kappa / p.chi;
  return a2 * p.kappa * std::exp(-p.kappa * t) *
         std::sqrt(rr * rr + (1.0 - r * r) * (1.0 - r * r)) / (1.0 + r * r);
}

TimeLocalGenerator dispersive_generator(const DispersiveParams& p) {
  p.check();
  const int nf = p.effective_n_max() + 1;  // Fock levels 0..n_max
  Matrix a = Matrix::Zero(nf, nf);
  for (int n = 1; n < nf; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const Matrix num = a.adjoint() * a;
  TimeLocalGenerator gen;
  gen.dim = 2 * nf;
  const Matrix h = p.chi * kron(pauli_z(), num);
  gen.hamiltonian = [h](double) { return h; };
  const Matrix jump = kron(identity(2), a);
  const double k = p.kappa;
  gen.channels.push_back(
      {[jump](double) { return jump; }, [k](double) { return k; }});
  return gen;
}

ModelOracle dispersive_full_oracle(const DispersiveParams& p,
                                   const TimeGrid& grid) {
  p.check();
  const int nf = p.effective_n_max() + 1;
  Vector coherent = Vector::Zero(nf);
  {
    const double a2 = std::norm(p.alpha);
    Complex amp = std::exp(-a2 / 2.0);
    for (int n = 0; n < nf; ++n) {
      coherent(n) = amp;
      amp *= p.alpha / std::sqrt(static_cast<double>(n + 1));
    }
    coherent /= coherent.norm();
  }
  Vector psi0 = Vector::Zero(2 * nf);
  psi0.head(nf) = coherent / std::sqrt(2.0);
  psi0.tail(nf) = coherent / std::sqrt(2.0);
  DensityMatrix rho0 = pure_state(psi0, {2, static_cast<Eigen::Index>(nf)});

  auto gen = dispersive_generator(p);
  auto traj = evolve(gen, rho0, grid);
  ModelOracle out;
  Complex c0;
  for (int i = 0; i < static_cast<int>(traj.states.size()); ++i) {
    const double t = grid.time(i);
    const auto& full = traj.states[i];
    double top = 0.0;
    for (int q = 0; q < 2; ++q)
      for (int n = nf - 2; n < nf; ++n)
        top += full.mat(q * nf + n, q * nf + n).real();
    if (top > 1e-8) {
      std::ostringstream os;
      os << "top two Fock levels hold population " << top << " at t = " << t
         << "; raise n_max";
      throw TruncationError(t, os.str());
    }
    out.times.push_back(t);
    out.reduced.push_back(partial_trace(full, 0));
    Complex c = out.reduced.back().mat(0, 1);
    if (i == 0) c0 = c;
    out.coherence.push_back(c / c0);
  }
  return out;
}

}  // namespace nmq
