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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nmq/measures.hpp"

using namespace nmq;

namespace {

RateTrace sampled_trace(double a, double b, int n, double (*f)(double)) {
  RateTrace trace;
  trace.times.resize(n + 1);
  trace.gammas.assign(1, std::vector<double>(n + 1));
  for (int i = 0; i <= n; ++i) {
    trace.times[i] = a + (b - a) * i / n;
    trace.gammas[0][i] = f(trace.times[i]);
  }
  return trace;
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST_CASE("constant positive rate is Markovian") {
  auto trace = sampled_trace(0.0, 1.0, 100, [](double) { return 1.0; });
  CHECK(decay_rate_measure(trace, 0.0, 1.0) == 0.0);
  CHECK(markovian_bound(trace, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(qem_cost_unital(trace, 1.0) == doctest::Approx(std::exp(2.0)));
  auto rep = cost_identity_check(trace, 0.0, 1.0);
  CHECK(rep.cost_via_identity == doctest::Approx(std::exp(2.0)));
}

TEST_CASE("sinusoidal rate has F=2, D=4, C=e^4") {
  auto trace =
      sampled_trace(0.0, kTwoPi, 800, [](double t) { return std::sin(t); });
  CHECK(decay_rate_measure(trace, 0.0, kTwoPi) ==
        doctest::Approx(2.0).epsilon(1e-8));
  CHECK(markovian_bound(trace, 0.0, kTwoPi) ==
        doctest::Approx(4.0).epsilon(1e-8));
  CHECK(qem_cost_unital(trace, kTwoPi) ==
        doctest::Approx(std::exp(4.0)).epsilon(1e-7));
  auto rep = cost_identity_check(trace, 0.0, kTwoPi);
  CHECK(std::abs(rep.cost_direct - rep.cost_via_identity) <=
        1e-8 * rep.cost_direct);
  CHECK_THROWS_AS(decay_rate_measure(trace, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("additivity of F and D") {
  auto trace = sampled_trace(0.0, kTwoPi, 1000,
                             [](double t) { return std::sin(3.0 * t) - 0.2; });
  const double mid = 2.0;
  double f_total = decay_rate_measure(trace, 0.0, kTwoPi);
  double f_split = decay_rate_measure(trace, 0.0, mid) +
                   decay_rate_measure(trace, mid, kTwoPi);
  CHECK(f_total == doctest::Approx(f_split).epsilon(1e-9));
  double d_total = markovian_bound(trace, 0.0, kTwoPi);
  double d_split =
      markovian_bound(trace, 0.0, mid) + markovian_bound(trace, mid, kTwoPi);
  CHECK(d_total == doctest::Approx(d_split).epsilon(1e-9));
  CHECK(f_total >= 0.0);
  CHECK(d_total >= f_total);
}

TEST_CASE("cost is non-decreasing and exactly flat on negative stretches") {
  auto trace =
      sampled_trace(0.0, kTwoPi, 800, [](double t) { return std::sin(t); });
  double prev = 1.0;
  for (int i = 1; i <= 40; ++i) {
    double T = kTwoPi * i / 40.0;
    double c = qem_cost_unital(trace, T);
    CHECK(c >= prev - 1e-12);
    prev = c;
  }
  double at_pi = qem_cost_unital(trace, std::numbers::pi + 0.05);
  double at_end = qem_cost_unital(trace, kTwoPi - 0.05);
  CHECK(at_pi == at_end);  // machine-exact flatness
}

TEST_CASE("general cost matches the unital shortcut on a dephasing sweep") {
  auto gamma = [](double t) { return 0.9 * std::sin(4.0 * t) + 0.1; };
  auto gen = dephasing_generator(gamma, {});
  const int n = 3000;
  std::vector<double> times(n + 1);
  for (int i = 0; i <= n; ++i) times[i] = 2.0 * i / n;
  auto ct = canonical_trace(gen, pauli_basis(1), times);
  double general = qem_cost_general(ct, 2.0);

  // the trace carries the same gamma the canonical eigenvalues expose
  RateTrace trace;
  trace.times = times;
  trace.gammas.assign(1, std::vector<double>(n + 1));
  for (int i = 0; i <= n; ++i) trace.gammas[0][i] = gamma(times[i]);
  double unital = qem_cost_unital(trace, 2.0);
  // the sorted eigenvalue columns carry interpolation kinks at the sign
  // changes, so agreement improves with the sampling density
  CHECK(general == doctest::Approx(unital).epsilon(1e-6));

  CanonicalTrace trivial;
  trivial.times = times;
  trivial.q.assign(times.size(), Eigen::VectorXd::Zero(4));
  trivial.identity_overlap.assign(times.size(), Eigen::VectorXd::Unit(4, 0));
  CHECK(qem_cost_general(trivial, 2.0) == doctest::Approx(1.0));
}

TEST_CASE("ambiguous identity slot is rejected") {
  CanonicalTrace ct;
  ct.times = {0.0, 1.0};
  ct.q.assign(2, Eigen::VectorXd::Zero(4));
  Eigen::VectorXd smeared(4);
  smeared << 0.5, 0.5, 0.5, 0.5;
  ct.identity_overlap.assign(2, smeared);
  CHECK_THROWS_WITH_AS(qem_cost_general(ct, 1.0),
                       doctest::Contains("ambiguous"), std::runtime_error);
}

TEST_CASE("non-CP witness signs follow the rate sign") {
  auto positive = dephasing_generator([](double) { return 1.0; }, {});
  CHECK(std::abs(rhp_witness(positive, 0.3, 1e-6)) <= 1e-6);

  auto negative = dephasing_generator([](double) { return -1.0; }, {});
  CHECK(rhp_witness(negative, 0.3, 1e-6) > 0.1);
}

TEST_CASE("witness proportionality to the negative part is constant") {
  auto gen = dephasing_generator([](double t) { return std::sin(t); }, {});
  double ref = 0.0;
  for (double t = std::numbers::pi + 0.3; t < kTwoPi - 0.3; t += 0.3) {
    double g = std::sin(t);
    double ratio = rhp_witness(gen, t, 1e-7) / (-g);
    if (ref == 0.0) ref = ratio;
    CHECK(ratio == doctest::Approx(ref).epsilon(0.01));
  }
  CHECK(ref > 0.0);
}

TEST_CASE("measure report invariants on a mixed-sign trace") {
  auto trace = sampled_trace(0.0, 4.0, 500,
                             [](double t) { return std::cos(2.0 * t) - 0.3; });
  auto rep = cost_identity_check(trace, 0.0, 4.0);
  CHECK(rep.decay_rate_measure > 0.0);
  CHECK(rep.markovian_bound >= rep.decay_rate_measure);
  CHECK(rep.cost_direct >= 1.0);
  CHECK(std::abs(rep.cost_direct - rep.cost_via_identity) <=
        1e-8 * rep.cost_direct);
}
