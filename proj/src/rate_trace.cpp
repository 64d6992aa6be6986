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

#include "nmq/rate_trace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nmq {

SampledFunction::SampledFunction(std::vector<double> times,
                                 std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size() || times_.size() < 2)
    throw std::invalid_argument("sampled function needs >= 2 matching samples");
  for (std::size_t i = 1; i < times_.size(); ++i)
    if (!(times_[i] > times_[i - 1]))
      throw std::invalid_argument("sample times must be strictly increasing");
}

double SampledFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SampledFunction::cell_value(std::size_t cell, double t) const {
  // 4-point Lagrange on the stencil around the cell, clamped at the ends
  const std::size_t n = times_.size();
  std::size_t lo = (cell == 0) ? 0 : cell - 1;
  if (lo + 4 > n) lo = n - 4;
  if (n < 4) lo = 0;
  const std::size_t k = std::min<std::size_t>(4, n);
  double acc = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    double term = values_[lo + i];
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      term *= (t - times_[lo + j]) / (times_[lo + i] - times_[lo + j]);
    }
    acc += term;
  }
  return acc;
}

double SampledFunction::operator()(double t) const {
  const double span = t_max() - t_min();
  if (t < t_min() - 1e-12 * span || t > t_max() + 1e-12 * span)
    throw std::out_of_range("evaluation outside sampled range");
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t cell = (it == times_.begin())
                         ? 0
                         : static_cast<std::size_t>(it - times_.begin()) - 1;
  if (cell >= times_.size() - 1) cell = times_.size() - 2;
  return cell_value(cell, t);
}

std::vector<double> SampledFunction::roots(double a, double b) const {
  std::vector<double> out;
  auto bisect = [this](std::size_t cell, double lo, double hi) {
    double flo = cell_value(cell, lo);
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      double fm = cell_value(cell, mid);
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  for (std::size_t cell = 0; cell + 1 < times_.size(); ++cell) {
    double lo = std::max(a, times_[cell]);
    double hi = std::min(b, times_[cell + 1]);
    if (!(hi > lo)) continue;
    // endpoint + midpoint signs catch up to two crossings per cell
    double mid = 0.5 * (lo + hi);
    double f0 = cell_value(cell, lo), f1 = cell_value(cell, mid),
           f2 = cell_value(cell, hi);
    if (f0 == 0.0) out.push_back(lo);
    if ((f0 < 0.0) != (f1 < 0.0) && f0 != 0.0)
      out.push_back(bisect(cell, lo, mid));
    if (f1 == 0.0) out.push_back(mid);
    if ((f1 < 0.0) != (f2 < 0.0) && f1 != 0.0)
      out.push_back(bisect(cell, mid, hi));
  }
  if (!out.empty()) {
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [a, b](double x, double y) {
                            return std::abs(x - y) <= 1e-14 * (b - a);
                          }),
              out.end());
  }
  return out;
}

namespace {
double simpson(const std::function<double(double)>& f, double lo, double hi) {
  const double h = (hi - lo) / 4.0;
  return (h / 3.0) * (f(lo) + 4.0 * f(lo + h) + 2.0 * f(lo + 2 * h) +
                      4.0 * f(lo + 3 * h) + f(hi));
}
}  // namespace

double SampledFunction::integrate(
    double a, double b, const std::function<double(double)>& transform) const {
  const double span = t_max() - t_min();
  if (a < t_min() - 1e-9 * span || b > t_max() + 1e-9 * span || a > b)
    throw std::out_of_range("integration interval outside sampled range");
  a = std::max(a, t_min());
  b = std::min(b, t_max());
  double total = 0.0;
  for (std::size_t cell = 0; cell + 1 < times_.size(); ++cell) {
    double lo = std::max(a, times_[cell]);
    double hi = std::min(b, times_[cell + 1]);
    if (!(hi > lo)) continue;
    std::vector<double> cuts{lo};
    for (double r : roots(lo, hi))
      if (r > lo && r < hi) cuts.push_back(r);
    cuts.push_back(hi);
    auto g = [this, cell, &transform](double t) {
      return transform(cell_value(cell, t));
    };
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
      total += simpson(g, cuts[i], cuts[i + 1]);
  }
  return total;
}

double SampledFunction::integrate(double a, double b) const {
  return integrate(a, b, [](double v) { return v; });
}

void RateTrace::check() const {
  if (times.size() < 2)
    throw std::invalid_argument("rate trace needs >= 2 samples");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("rate trace times must be strictly increasing");
  for (const auto& g : gammas)
    if (g.size() != times.size())
      throw std::invalid_argument("rate trace channel length mismatch");
  if (!lamb_shift.empty() && lamb_shift.size() != times.size())
    throw std::invalid_argument("lamb shift length mismatch");
}

SampledFunction RateTrace::channel(std::size_t k) const {
  return SampledFunction(times, gammas.at(k));
}

SampledFunction RateTrace::lamb_shift_fn() const {
  return SampledFunction(times, lamb_shift);
}

}  // namespace nmq
