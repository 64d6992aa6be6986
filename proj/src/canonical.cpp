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

#include "nmq/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "nmq/errors.hpp"

namespace nmq {

Eigen::VectorXd CanonicalDecomposition::identity_overlap() const {
  Eigen::VectorXd out(u.cols());
  for (Eigen::Index l = 0; l < u.cols(); ++l) out(l) = std::abs(u(0, l));
  return out;
}

ProcessMatrix build_process_matrix(const TimeLocalGenerator& gen, double t,
                                   const BasisSet& basis) {
  const Eigen::Index d = basis.dim();
  if (gen.dim != d)
    throw std::invalid_argument("generator and basis dimensions differ");
  const Eigen::Index d2 = static_cast<Eigen::Index>(basis.ops.size());
  const double sqrt_d = std::sqrt(static_cast<double>(d));
  Matrix m = Matrix::Zero(d2, d2);
  for (const auto& ch : gen.channels) {
    double g = ch.rate(t);
    Matrix l = ch.jump(t);
    if (l.rows() != d || l.cols() != d)
      throw std::invalid_argument("jump operator dimension mismatch");
    double fro2 = l.squaredNorm();
    if (fro2 <= 0.0) continue;
    // renormalize to Tr[L^dag L] = 1, rate absorbs the norm
    l /= std::sqrt(fro2);
    g *= fro2;
    if (g == 0.0) continue;
    Matrix ldl = l.adjoint() * l;
    Vector a(d2);
    Eigen::VectorXd b(d2);
    for (Eigen::Index i = 0; i < d2; ++i) {
      a(i) = (basis.ops[i] * l).trace() / sqrt_d;
      b(i) = ((basis.ops[i] * ldl).trace() / sqrt_d).real();
    }
    m.noalias() += g * (a * a.adjoint());
    for (Eigen::Index i = 0; i < d2; ++i) {
      m(i, 0) += Complex(-0.5 * g * sqrt_d * b(i));
      m(0, i) += Complex(-0.5 * g * sqrt_d * b(i));
    }
  }
  return ProcessMatrix{t, std::move(m), basis};
}

CanonicalDecomposition canonical_rates(const ProcessMatrix& pm) {
  auto ed = hermitian_eigendecompose(pm.m);
  const Eigen::Index d2 = pm.m.rows();
  const double sqrt_d = std::sqrt(static_cast<double>(pm.basis.dim()));
  CanonicalDecomposition cd;
  cd.t = pm.t;
  cd.q = ed.values;
  cd.u = ed.vectors;
  cd.b_ops.reserve(d2);
  for (Eigen::Index l = 0; l < d2; ++l) {
    Matrix b = Matrix::Zero(pm.basis.dim(), pm.basis.dim());
    for (Eigen::Index i = 0; i < d2; ++i)
      b += cd.u(i, l) * pm.basis.ops[i] / sqrt_d;
    cd.b_ops.push_back(std::move(b));
  }
  return cd;
}

Matrix apply_decomposition(const CanonicalDecomposition& cd, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index l = 0; l < cd.q.size(); ++l)
    out.noalias() += cd.q(l) * cd.b_ops[l] * rho * cd.b_ops[l].adjoint();
  return out;
}

RateTrace extract_dephasing_rates(const std::vector<Complex>& coherence,
                                  const std::vector<double>& times) {
  const std::size_t n = times.size();
  if (coherence.size() != n || n < 5)
    throw std::invalid_argument("need >= 5 matching coherence samples");
  for (std::size_t i = 1; i < n; ++i)
    if (!(times[i] > times[i - 1]))
      throw std::invalid_argument("times must be strictly increasing");
  const double h = (times.back() - times.front()) / (n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(coherence[i]) <= kCoherenceDivergenceEps) {
      std::ostringstream os;
      os << "coherence magnitude " << std::abs(coherence[i]) << " at t = "
         << times[i] << " below divergence threshold; the time-local rate "
            "diverges at a specific time point";
      throw DivergenceError(times[i], os.str());
    }
  }
  auto deriv = [&](std::size_t j) -> Complex {
    const auto& c = coherence;
    if (j >= 2 && j + 2 < n)
      return (c[j - 2] - 8.0 * c[j - 1] + 8.0 * c[j + 1] - c[j + 2]) / (12 * h);
    if (j == 0)
      return (-25.0 * c[0] + 48.0 * c[1] - 36.0 * c[2] + 16.0 * c[3] -
              3.0 * c[4]) /
             (12 * h);
    if (j == 1)
      return (-3.0 * c[0] - 10.0 * c[1] + 18.0 * c[2] - 6.0 * c[3] + c[4]) /
             (12 * h);
    if (j == n - 2)
      return (3.0 * c[n - 1] + 10.0 * c[n - 2] - 18.0 * c[n - 3] +
              6.0 * c[n - 4] - c[n - 5]) /
             (12 * h);
    return (25.0 * c[n - 1] - 48.0 * c[n - 2] + 36.0 * c[n - 3] -
            16.0 * c[n - 4] + 3.0 * c[n - 5]) /
           (12 * h);
  };
  RateTrace out;
  out.times = times;
  out.gammas.resize(1);
  out.gammas[0].resize(n);
  out.lamb_shift.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    Complex r = deriv(j) / coherence[j];
    out.gammas[0][j] = -r.real();
    out.lamb_shift[j] = -r.imag();
  }
  return out;
}

std::pair<bool, std::vector<std::pair<double, double>>> is_cp_divisible(
    const RateTrace& rates) {
  rates.check();
  double max_abs = 0.0;
  for (const auto& g : rates.gammas)
    for (double v : g) max_abs = std::max(max_abs, std::abs(v));
  const double eps = 1e-10 * max_abs;
  bool ok = true;
  std::vector<std::pair<double, double>> intervals;
  for (std::size_t k = 0; k < rates.n_channels(); ++k) {
    for (double v : rates.gammas[k])
      if (v < -eps) ok = false;
    SampledFunction f = rates.channel(k);
    std::vector<double> cuts{f.t_min()};
    for (double r : f.roots(f.t_min(), f.t_max())) cuts.push_back(r);
    cuts.push_back(f.t_max());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (!(cuts[i + 1] > cuts[i])) continue;
      if (f(0.5 * (cuts[i] + cuts[i + 1])) < -eps)
        intervals.emplace_back(cuts[i], cuts[i + 1]);
    }
  }
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, iv.second);
    else
      merged.push_back(iv);
  }
  return {ok, std::move(merged)};
}

}  // namespace nmq
