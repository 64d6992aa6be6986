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

#include "nmq/sampler.hpp"

using namespace nmq;

TEST_CASE("recovery operation weights and probabilities") {
  SUBCASE("zero rate is the identity") {
    auto op = dephasing_recovery(0.0, 1e-3);
    CHECK(op.cost_factor == 1.0);
    CHECK(op.terms[0].first == doctest::Approx(1.0));
    CHECK(op.terms[1].first == 0.0);
  }
  SUBCASE("positive rate carries a negative Z weight and c > 1") {
    const double g = 50.0, dt = 1e-3;
    auto op = dephasing_recovery(g, dt);
    CHECK(op.cost_factor == doctest::Approx(1.0 + g * dt));
    CHECK(op.terms[1].first < 0.0);
    double mu_sum = std::abs(op.terms[0].first) + std::abs(op.terms[1].first);
    CHECK(mu_sum == doctest::Approx(op.cost_factor));
    auto p = op.probabilities();
    CHECK(p[0] + p[1] == doctest::Approx(1.0));
    CHECK(p[1] == doctest::Approx(g * dt / 2.0));
  }
  SUBCASE("negative rate is a physical channel with c = 1") {
    auto op = dephasing_recovery(-80.0, 1e-3);
    CHECK(op.cost_factor == 1.0);
    CHECK(op.terms[0].first >= 0.0);
    CHECK(op.terms[1].first >= 0.0);
    CHECK(op.terms[0].first + op.terms[1].first == doctest::Approx(1.0));
  }
  CHECK_THROWS_AS(dephasing_recovery(200.0, 1e-3), std::invalid_argument);
}

TEST_CASE("recovery inverts the noisy step to first order") {
  const double dt = 1e-5;
  for (double g : {60.0, -45.0}) {
    auto op = dephasing_recovery(g, dt);
    Matrix rho = pure_state(ket_plus(), {2}).mat;
    // noisy dephasing step on the coherence: factor (1 - g dt)
    Matrix noisy = rho;
    noisy(0, 1) *= 1.0 - g * dt;
    noisy(1, 0) *= 1.0 - g * dt;
    Matrix recovered = Matrix::Zero(2, 2);
    for (const auto& [mu, m] : op.terms)
      recovered += mu * m * noisy * m.adjoint();
    CHECK((recovered - rho).cwiseAbs().maxCoeff() <
          10.0 * g * g * dt * dt + 1e-12);
  }
}

TEST_CASE("rng streams are deterministic and decorrelated") {
  RngStream a(42, 7), b(42, 7), c(42, 8);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  int agree = 0;
  RngStream a2(42, 7);
  for (int i = 0; i < 64; ++i)
    if (((a2.next() ^ c.next()) & 1) == 0) ++agree;
  CHECK(agree > 10);
  CHECK(agree < 54);
  RngStream u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("jump sampling statistics") {
  SUBCASE("zero rate never fires") {
    RngStream rng(5, 0);
    auto jumps = sample_jump_times([](double) { return 0.0; }, 10.0, 0.0, rng);
    CHECK(jumps.empty());
  }
  SUBCASE("constant rate matches Poisson mean") {
    const double lambda = 3.0, T = 2.0;
    const int draws = 100000;
    long long total = 0;
    for (int i = 0; i < draws; ++i) {
      RngStream rng(99, static_cast<std::uint64_t>(i));
      auto jumps =
          sample_jump_times([](double) { return 3.0; }, T, lambda, rng);
      total += static_cast<long long>(jumps.size());
      for (std::size_t j = 1; j < jumps.size(); ++j)
        CHECK(jumps[j] > jumps[j - 1]);
    }
    double mean = static_cast<double>(total) / draws;
    double tol = 4.0 * std::sqrt(lambda * T / draws);
    CHECK(std::abs(mean - lambda * T) < tol);
  }
  SUBCASE("thinning reproduces an inhomogeneous intensity") {
    auto rate = [](double t) { return 2.0 * (1.0 + std::sin(5.0 * t)); };
    const double T = 3.0;
    // int rate dt = 2T + (2/5)(1 - cos 5T)
    double expect = 2.0 * T + 0.4 * (1.0 - std::cos(5.0 * T));
    const int draws = 100000;
    long long total = 0;
    for (int i = 0; i < draws; ++i) {
      RngStream rng(123, static_cast<std::uint64_t>(i));
      total += static_cast<long long>(
          sample_jump_times(rate, T, 4.0, rng).size());
    }
    double mean = static_cast<double>(total) / draws;
    CHECK(std::abs(mean - expect) < 4.0 * std::sqrt(expect / draws));
  }
  SUBCASE("rate above the bound is an error") {
    RngStream rng(7, 0);
    CHECK_THROWS_AS(
        sample_jump_times([](double) { return 10.0; }, 5.0, 1.0, rng),
        std::runtime_error);
  }
}

TEST_CASE("noiseless model reproduces the ideal value with zero spread") {
  DephasingModel model{[](double) { return 0.0; }, [](double) { return 0.0; }};
  auto est = run_mitigated_estimate(model, pauli_x(), 0.01, 1000, 3);
  CHECK(est.mean == doctest::Approx(1.0));
  CHECK(est.std_error < 1e-8);  // zero up to rounding in the variance sum
  CHECK(est.cost == 1.0);
  CHECK(est.n_minus == 0);
  CHECK(ideal_expectation(model, pauli_x(), 0.01) == doctest::Approx(1.0));
}

TEST_CASE("constant-rate benchmark is unbiased with the expected spread") {
  DephasingModel model{[](double) { return 100.0; }, {}};
  const double T = 0.01;  // cost e^2
  auto est = run_mitigated_estimate(model, pauli_x(), T, 200000, 17);
  CHECK(est.cost == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
  CHECK(std::abs(est.mean - 1.0) <= 4.0 * est.std_error);
  double predicted = std::exp(2.0) / std::sqrt(200000.0);
  CHECK(est.std_error > 0.8 * predicted);
  CHECK(est.std_error < 1.2 * predicted);
  CHECK(est.n_plus + est.n_minus == est.n_trajectories);
}

TEST_CASE("error shrinks like the square root of the sample count") {
  DephasingModel model{[](double) { return 100.0; }, {}};
  auto e4 = run_mitigated_estimate(model, pauli_x(), 0.01, 10000, 21);
  auto e5 = run_mitigated_estimate(model, pauli_x(), 0.01, 100000, 21);
  double ratio = e4.std_error / e5.std_error;
  CHECK(ratio > 0.8 * std::sqrt(10.0));
  CHECK(ratio < 1.2 * std::sqrt(10.0));
}

TEST_CASE("fixed seed gives bit-identical results") {
  DephasingModel model{[](double t) { return 80.0 * std::cos(300.0 * t); },
                       [](double) { return 150.0; }};
  auto a = run_mitigated_estimate(model, pauli_x(), 0.02, 50000, 1234);
  auto b = run_mitigated_estimate(model, pauli_x(), 0.02, 50000, 1234);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.n_plus == b.n_plus);
  auto c = run_mitigated_estimate(model, pauli_x(), 0.02, 50000, 1235);
  CHECK(a.mean != c.mean);
}

TEST_CASE("negative-rate-only windows add no cost") {
  DephasingModel model{[](double) { return -50.0; }, {}};
  auto est = run_mitigated_estimate(model, pauli_x(), 0.01, 5000, 2);
  CHECK(est.cost == 1.0);
  CHECK(est.n_minus == 0);  // recovery signs are all positive
}

TEST_CASE("input validation") {
  DephasingModel model{[](double) { return 1.0; }, {}};
  CHECK_THROWS_AS(run_mitigated_estimate(model, pauli_x(), 1.0, 50, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_mitigated_estimate(model, sigma_plus(), 1.0, 1000, 1),
                  std::invalid_argument);
}

TEST_CASE("ideal expectation follows the Lamb-shift rotation") {
  DephasingModel model{[](double) { return 3.0; },
                       [](double) { return 100.0; }};
  const double T = 0.015;
  CHECK(ideal_expectation(model, pauli_x(), T) ==
        doctest::Approx(std::cos(100.0 * T)).epsilon(1e-6));
  DephasingModel still{[](double) { return 3.0; }, {}};
  CHECK(ideal_expectation(still, pauli_x(), 0.02) == doctest::Approx(1.0));
}
