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

namespace nmq {

/// Sampled scalar function of time with a piecewise-cubic interpolant,
/// root bracketing, and kink-aware Simpson quadrature. Simpson is exact on
/// the cubic interpolant, and |.|-type transforms stay exact because panels
/// are split at the bisected roots.
class SampledFunction {
 public:
  SampledFunction(std::vector<double> times, std::vector<double> values);

  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }
  double t_min() const { return times_.front(); }
  double t_max() const { return times_.back(); }
  double max_abs() const;

  double operator()(double t) const;

  /// Roots of the interpolant in [a, b], ascending.
  std::vector<double> roots(double a, double b) const;

  /// Integral of transform(f(t)) over [a, b]; transform may have a kink
  /// at f = 0.
  double integrate(double a, double b,
                   const std::function<double(double)>& transform) const;
  double integrate(double a, double b) const;

 private:
  double cell_value(std::size_t cell, double t) const;
  std::vector<double> times_;
  std::vector<double> values_;
};

/// Sampled canonical decay rates gamma_k(t), one array per channel, plus the
/// optional Lamb-shift trace S(t).
struct RateTrace {
  std::vector<double> times;                 // strictly increasing, seconds
  std::vector<std::vector<double>> gammas;   // per channel, s^-1
  std::vector<double> lamb_shift;            // rad/s, may be empty

  void check() const;
  std::size_t n_channels() const { return gammas.size(); }
  SampledFunction channel(std::size_t k) const;
  SampledFunction lamb_shift_fn() const;
};

}  // namespace nmq
