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

#include "nmq/sampler.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "nmq/rate_trace.hpp"
#include "nmq/timelocal.hpp"

namespace nmq {

std::vector<double> RecoveryOperation::probabilities() const {
  std::vector<double> p;
  p.reserve(terms.size());
  for (const auto& [mu, op] : terms) p.push_back(std::abs(mu) / cost_factor);
  return p;
}

RecoveryOperation dephasing_recovery(double gamma, double delta_t) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("delta_t must be positive");
  if (std::abs(gamma) * delta_t > 0.1)
    throw std::invalid_argument(
        "step too large: |gamma| * delta_t must not exceed 0.1");
  const double c = 1.0 + delta_t * (gamma + std::abs(gamma)) / 2.0;
  const double sgn = (gamma > 0.0) - (gamma < 0.0);
  RecoveryOperation op;
  op.terms.emplace_back(c * (1.0 - delta_t * std::abs(gamma) / 2.0),
                        identity(2));
  op.terms.emplace_back(c * (-sgn * delta_t * std::abs(gamma) / 2.0),
                        pauli_z());
  op.cost_factor = c;
  return op;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t index)
    : state_(seed ^ (index * 0x9e3779b97f4a7c15ULL)) {
  // decorrelate nearby (seed, index) pairs
  next();
  next();
}

std::uint64_t RngStream::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngStream::uniform() { return (next() >> 11) * 0x1.0p-53; }

double RngStream::exponential() { return -std::log1p(-uniform()); }

std::vector<double> sample_jump_times(const std::function<double(double)>& rate,
                                      double T, double rate_bound,
                                      RngStream& rng) {
  if (!(T >= 0.0)) throw std::invalid_argument("T must be nonnegative");
  if (!(rate_bound >= 0.0))
    throw std::invalid_argument("rate bound must be nonnegative");
  std::vector<double> times;
  if (rate_bound == 0.0) return times;
  double t = 0.0;
  while (true) {
    t += rng.exponential() / rate_bound;
    if (t > T) break;
    double r = rate(t);
    if (r > rate_bound * (1.0 + 1e-12))
      throw std::runtime_error("jump rate exceeds the configured bound");
    if (rng.uniform() * rate_bound < r) times.push_back(t);
  }
  return times;
}

namespace {

struct SampledModel {
  SampledFunction gamma;
  double log_cost;       // int (|gamma_c| + gamma_c)
  double decay;          // int 2 gamma_c
  double phase;          // int S
  double rate_bound;
};

SampledModel tabulate(const DephasingModel& model, double T) {
  const int n = 8000;
  std::vector<double> times(n + 1), g(n + 1), s(n + 1);
  for (int i = 0; i <= n; ++i) {
    times[i] = T * i / n;
    g[i] = model.canonical_rate(times[i]);
    s[i] = model.lamb_shift ? model.lamb_shift(times[i]) : 0.0;
  }
  SampledFunction gf(times, g);
  SampledFunction sf(times, s);
  SampledModel out{gf,
                   gf.integrate(0.0, T,
                                [](double v) { return std::abs(v) + v; }),
                   2.0 * gf.integrate(0.0, T), sf.integrate(0.0, T),
                   1.05 * gf.max_abs()};
  return out;
}

struct ChunkStat {
  double sum = 0.0;
  double sum_sq = 0.0;
  long long n_plus = 0;
  long long n_minus = 0;
};

}  // namespace

MitigatedEstimate run_mitigated_estimate(const DephasingModel& model,
                                         const Matrix& observable, double T,
                                         long long n, std::uint64_t seed) {
  if (n < 100) throw std::invalid_argument("need at least 100 trajectories");
  if (observable.rows() != 2 || observable.cols() != 2 ||
      !is_hermitian(observable))
    throw std::invalid_argument("observable must be a Hermitian qubit matrix");
  if (!model.canonical_rate)
    throw std::invalid_argument("model has no rate function");

  const SampledModel sm = tabulate(model, T);
  auto ed = hermitian_eigendecompose(observable);
  const double o0 = ed.values(0), o1 = ed.values(1);
  // p(outcome 0) = <v0|rho|v0> = 1/2 + Re[conj(w0) rho_01 .. ], reduced to a
  // scalar against the trajectory coherence
  const Complex w0 = std::conj(ed.vectors(0, 0)) * ed.vectors(1, 0);
  const Complex base_coh =
      0.5 * std::exp(Complex(-sm.decay, -sm.phase));  // rho_01 before jumps

  auto rate_abs = [&sm](double t) { return std::abs(sm.gamma(t)); };

  const long long chunk = 8192;
  const long long n_chunks = (n + chunk - 1) / chunk;
  std::vector<ChunkStat> stats(static_cast<std::size_t>(n_chunks));
  std::atomic<long long> next_chunk{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&]() {
    try {
      while (true) {
        long long c = next_chunk.fetch_add(1);
        if (c >= n_chunks) break;
        ChunkStat st;
        const long long lo = c * chunk;
        const long long hi = std::min(n, lo + chunk);
        for (long long i = lo; i < hi; ++i) {
          RngStream rng(seed, static_cast<std::uint64_t>(i));
          auto jumps = sample_jump_times(rate_abs, T, sm.rate_bound, rng);
          double sign = 1.0;
          double parity = 1.0;
          for (double tj : jumps) {
            double g = sm.gamma(tj);
            sign *= -((g > 0.0) - (g < 0.0));
            parity = -parity;
          }
          Complex coh = parity * base_coh;
          double p0 = 0.5 + 2.0 * (w0 * coh).real();
          p0 = std::min(1.0, std::max(0.0, p0));
          double outcome = (rng.uniform() < p0) ? o0 : o1;
          double v = sign * outcome;
          st.sum += v;
          st.sum_sq += v * v;
          if (sign > 0.0)
            ++st.n_plus;
          else
            ++st.n_minus;
        }
        stats[static_cast<std::size_t>(c)] = st;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };

  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  const unsigned n_threads =
      std::min<unsigned>(hw, static_cast<unsigned>(n_chunks));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  // combine in chunk order so the result is independent of scheduling
  double sum = 0.0, sum_sq = 0.0;
  long long n_plus = 0, n_minus = 0;
  for (const auto& st : stats) {
    sum += st.sum;
    sum_sq += st.sum_sq;
    n_plus += st.n_plus;
    n_minus += st.n_minus;
  }

  const double cost = std::exp(sm.log_cost);
  const double raw_mean = sum / n;
  double var = (sum_sq - n * raw_mean * raw_mean) / (n - 1);
  if (var < 0.0) var = 0.0;

  MitigatedEstimate est;
  est.mean = cost * raw_mean;
  est.std_error = cost * std::sqrt(var / n);
  est.cost = cost;
  est.n_trajectories = n;
  est.seed = seed;
  est.n_plus = n_plus;
  est.n_minus = n_minus;
  return est;
}

double ideal_expectation(const DephasingModel& model, const Matrix& observable,
                         double T) {
  if (observable.rows() != 2 || observable.cols() != 2 ||
      !is_hermitian(observable))
    throw std::invalid_argument("observable must be a Hermitian qubit matrix");
  auto shift = model.lamb_shift ? model.lamb_shift
                                : std::function<double(double)>(
                                      [](double) { return 0.0; });
  if (T == 0.0)
    return (pure_state(ket_plus(), {2}).mat * observable).trace().real();
  auto gen = dephasing_generator([](double) { return 0.0; }, shift);
  double max_s = 0.0;
  for (int i = 0; i <= 256; ++i)
    max_s = std::max(max_s, std::abs(shift(T * i / 256.0)));
  TimeGrid grid{0.0, T, default_steps(max_s, T)};
  auto traj = evolve(gen, pure_state(ket_plus(), {2}), grid);
  return (traj.states.back().mat * observable).trace().real();
}

}  // namespace nmq
