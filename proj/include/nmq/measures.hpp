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

#include <vector>

#include "nmq/canonical.hpp"
#include "nmq/rate_trace.hpp"
#include "nmq/timelocal.hpp"

namespace nmq {

struct MeasureReport {
  double t_from = 0.0;
  double t_to = 0.0;
  double decay_rate_measure = 0.0;   // F
  double markovian_bound = 0.0;      // D
  double cost_direct = 1.0;
  double cost_via_identity = 1.0;    // exp[2(D - F)]
};

/// F(t', t) = sum_k int (|gamma_k| - gamma_k)/2 ds. Total amount of
/// non-Markovianity; zero iff the trace is CP-divisible.
double decay_rate_measure(const RateTrace& rates, double t, double t_prime);

/// D(t', t) = sum_k int |gamma_k| ds. Cost exponent of the Markovian
/// process with rates |gamma_k|.
double markovian_bound(const RateTrace& rates, double t, double t_prime);

/// Unitary-jump sampling cost C(T) = exp[sum_k int_0^T (|gamma_k| +
/// gamma_k) dt]. Exactly flat over intervals where every rate is negative.
double qem_cost_unital(const RateTrace& rates, double T);

/// Per-time canonical eigenvalue columns, sorted ascending, with the
/// identity-slot overlaps needed to single out q_0.
struct CanonicalTrace {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> q;
  std::vector<Eigen::VectorXd> identity_overlap;
};

CanonicalTrace canonical_trace(const TimeLocalGenerator& gen,
                               const BasisSet& basis,
                               const std::vector<double>& times);

/// General cost C(T) = exp[int_0^T (-q_0 + sum_{l>=1} |q_l|) dt], with q_0
/// identified by identity overlap >= 0.99 at every sample.
double qem_cost_general(const CanonicalTrace& trace, double T);

/// All four quantities on [t_from, t_to]; enforces F <= D, costs >= 1 and
/// agreement of the two cost routes.
MeasureReport cost_identity_check(const RateTrace& rates, double t_from,
                                  double t_to);

/// (||(id (x) E_(t+eps,t))(|Phi><Phi|)||_1 - 1)/eps with first-order
/// propagation of the generator; positive iff the instantaneous map fails
/// complete positivity.
double rhp_witness(const TimeLocalGenerator& gen, double t, double eps);

}  // namespace nmq
