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

#include "nmq/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nmq {

namespace {
double channel_sum(const RateTrace& rates, double a, double b,
                   const std::function<double(double)>& transform) {
  rates.check();
  double total = 0.0;
  for (std::size_t k = 0; k < rates.n_channels(); ++k)
    total += rates.channel(k).integrate(a, b, transform);
  return total;
}
}  // namespace

double decay_rate_measure(const RateTrace& rates, double t, double t_prime) {
  if (t > t_prime) throw std::invalid_argument("need t <= t_prime");
  return channel_sum(rates, t, t_prime,
                     [](double g) { return 0.5 * (std::abs(g) - g); });
}

double markovian_bound(const RateTrace& rates, double t, double t_prime) {
  if (t > t_prime) throw std::invalid_argument("need t <= t_prime");
  return channel_sum(rates, t, t_prime,
                     [](double g) { return std::abs(g); });
}

double qem_cost_unital(const RateTrace& rates, double T) {
  return std::exp(channel_sum(rates, rates.times.front(), T,
                              [](double g) { return std::abs(g) + g; }));
}

CanonicalTrace canonical_trace(const TimeLocalGenerator& gen,
                               const BasisSet& basis,
                               const std::vector<double>& times) {
  CanonicalTrace out;
  out.times = times;
  out.q.reserve(times.size());
  out.identity_overlap.reserve(times.size());
  for (double t : times) {
    auto cd = canonical_rates(build_process_matrix(gen, t, basis));
    out.q.push_back(cd.q);
    out.identity_overlap.push_back(cd.identity_overlap());
  }
  return out;
}

double qem_cost_general(const CanonicalTrace& trace, double T) {
  const std::size_t n = trace.times.size();
  if (n < 2 || trace.q.size() != n || trace.identity_overlap.size() != n)
    throw std::invalid_argument("malformed canonical trace");
  const Eigen::Index d2 = trace.q.front().size();
  // q_0 removed per sample; the remainder, resorted, gives continuous columns
  std::vector<double> q0(n);
  std::vector<std::vector<double>> rest(d2 - 1, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    Eigen::Index l0 = 0;
    double best = 0.0;
    for (Eigen::Index l = 0; l < d2; ++l) {
      double ov = trace.identity_overlap[j](l);
      if (ov > best) {
        best = ov;
        l0 = l;
      }
    }
    if (best < 0.99) {
      std::ostringstream os;
      os << "identity-slot overlap " << best << " below 0.99 at t = "
         << trace.times[j] << "; q_0 identification ambiguous";
      throw std::runtime_error(os.str());
    }
    q0[j] = trace.q[j](l0);
    std::vector<double> rem;
    rem.reserve(d2 - 1);
    for (Eigen::Index l = 0; l < d2; ++l)
      if (l != l0) rem.push_back(trace.q[j](l));
    std::sort(rem.begin(), rem.end());
    for (Eigen::Index l = 0; l < d2 - 1; ++l) rest[l][j] = rem[l];
  }
  const double t0 = trace.times.front();
  double expo = -SampledFunction(trace.times, q0).integrate(t0, T);
  for (const auto& col : rest)
    expo += SampledFunction(trace.times, col)
                .integrate(t0, T, [](double v) { return std::abs(v); });
  return std::exp(expo);
}

MeasureReport cost_identity_check(const RateTrace& rates, double t_from,
                                  double t_to) {
  MeasureReport rep;
  rep.t_from = t_from;
  rep.t_to = t_to;
  rep.decay_rate_measure = decay_rate_measure(rates, t_from, t_to);
  rep.markovian_bound = markovian_bound(rates, t_from, t_to);
  rep.cost_direct = std::exp(channel_sum(
      rates, t_from, t_to, [](double g) { return std::abs(g) + g; }));
  rep.cost_via_identity =
      std::exp(2.0 * (rep.markovian_bound - rep.decay_rate_measure));
  if (rep.decay_rate_measure < 0.0 ||
      rep.markovian_bound < rep.decay_rate_measure - 1e-12 ||
      rep.cost_direct < 1.0 - 1e-12 || rep.cost_via_identity < 1.0 - 1e-12)
    throw std::logic_error("measure report invariant violated");
  double rel = std::abs(rep.cost_direct - rep.cost_via_identity) /
               rep.cost_direct;
  if (rel > 1e-8)
    throw std::logic_error("cost identity drifted beyond 1e-8 relative");
  return rep;
}

double rhp_witness(const TimeLocalGenerator& gen, double t, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const Eigen::Index d = gen.dim;
  Matrix chi = maximally_entangled_state(d);
  Matrix id = identity(d);
  Matrix delta = Matrix::Zero(d * d, d * d);
  if (gen.hamiltonian) {
    Matrix h2 = kron(id, gen.hamiltonian(t));
    delta.noalias() += Complex(0, -1) * (h2 * chi - chi * h2);
  }
  for (const auto& ch : gen.channels) {
    double g = ch.rate(t);
    if (g == 0.0) continue;
    Matrix l2 = kron(id, ch.jump(t));
    Matrix ldl = l2.adjoint() * l2;
    delta.noalias() +=
        g * (l2 * chi * l2.adjoint() - 0.5 * (ldl * chi + chi * ldl));
  }
  Matrix propagated = chi + eps * delta;
  return (trace_norm(propagated) - 1.0) / eps;
}

}  // namespace nmq
