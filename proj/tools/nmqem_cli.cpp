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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nmq/canonical.hpp"
#include "nmq/errors.hpp"
#include "nmq/measures.hpp"
#include "nmq/models.hpp"
#include "nmq/rate_trace.hpp"
#include "nmq/sampler.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitGate = 3;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct ModelOptions {
  std::string model = "nmr";
  // nmr
  double J = 2.0 * std::numbers::pi * 215.0;  // rad/s
  double gamma = 0.0;                         // s^-1
  double t2 = 0.0;                            // s; sets gamma = 1/t2 if > 0
  double s = 0.3;
  // dispersive
  double abs_alpha_sq = 1.0;
  double chi_over_kappa = 3.0;
  double kappa = 1.0;  // s^-1
  int n_max = 0;
  // custom dephasing
  double gamma_const = 0.0;     // s^-1
  double gamma_sin_amp = 0.0;   // s^-1
  double gamma_sin_freq = 1.0;  // rad/s
  double lamb_shift_const = 0.0;  // rad/s

  nmq::NmrParams nmr() const {
    double g = t2 > 0.0 ? 1.0 / t2 : gamma;
    return nmq::NmrParams{J, g, s};
  }
  nmq::DispersiveParams dispersive() const {
    return nmq::DispersiveParams{chi_over_kappa * kappa, kappa,
                                 std::sqrt(abs_alpha_sq), n_max};
  }
  double custom_gamma(double t) const {
    return gamma_const + gamma_sin_amp * std::sin(gamma_sin_freq * t);
  }

  std::string describe() const {
    std::ostringstream os;
    os << "model=" << model;
    if (model == "nmr") {
      auto p = nmr();
      os << " J=" << fmt(p.J) << " gamma=" << fmt(p.gamma) << " s=" << fmt(p.s);
      if (t2 > 0.0) os << " (gamma taken as 1/t2, t2=" << fmt(t2) << ")";
    } else if (model == "dispersive") {
      os << " abs_alpha_sq=" << fmt(abs_alpha_sq)
         << " chi_over_kappa=" << fmt(chi_over_kappa)
         << " kappa=" << fmt(kappa) << " n_max=" << dispersive().effective_n_max();
    } else {
      os << " gamma_const=" << fmt(gamma_const)
         << " gamma_sin_amp=" << fmt(gamma_sin_amp)
         << " gamma_sin_freq=" << fmt(gamma_sin_freq)
         << " lamb_shift_const=" << fmt(lamb_shift_const);
    }
    return os.str();
  }
};

void add_model_flags(CLI::App* cmd, ModelOptions& mo) {
  cmd->add_option("--model", mo.model, "nmr | dispersive | custom-dephasing")
      ->check(CLI::IsMember({"nmr", "dispersive", "custom-dephasing"}));
  cmd->add_option("--J", mo.J, "qubit-qubit coupling [rad/s]");
  cmd->add_option("--gamma", mo.gamma, "partner relaxation rate [1/s]");
  cmd->add_option("--t2", mo.t2, "partner decoherence time [s]; gamma = 1/t2");
  cmd->add_option("--s", mo.s, "temperature parameter in [0, 1/2]");
  cmd->add_option("--abs-alpha-sq", mo.abs_alpha_sq, "initial photon number |alpha|^2");
  cmd->add_option("--chi-over-kappa", mo.chi_over_kappa, "dispersive shift over decay");
  cmd->add_option("--kappa", mo.kappa, "resonator decay rate [1/s]");
  cmd->add_option("--n-max", mo.n_max, "Fock cutoff (0 = automatic)");
  cmd->add_option("--gamma-const", mo.gamma_const, "constant rate [1/s]");
  cmd->add_option("--gamma-sin-amp", mo.gamma_sin_amp, "sinusoidal rate amplitude [1/s]");
  cmd->add_option("--gamma-sin-freq", mo.gamma_sin_freq, "sinusoidal rate frequency [rad/s]");
  cmd->add_option("--lamb-shift-const", mo.lamb_shift_const, "constant Lamb shift [rad/s]");
}

double default_t_max(const ModelOptions& mo) {
  if (mo.model == "nmr") return 15e-3;
  if (mo.model == "dispersive") return 5.0 / mo.kappa;
  return 1.0;
}

nmq::RateTrace build_trace(const ModelOptions& mo, double t_max, int steps) {
  nmq::RateTrace trace;
  trace.times.resize(steps + 1);
  trace.gammas.assign(1, std::vector<double>(steps + 1));
  trace.lamb_shift.resize(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double t = t_max * i / steps;
    trace.times[i] = t;
    double g, s_val;
    if (mo.model == "nmr") {
      std::tie(g, s_val) = nmq::nmr_rates(mo.nmr(), t);
    } else if (mo.model == "dispersive") {
      std::tie(g, s_val) = nmq::dispersive_rates(mo.dispersive(), t);
    } else {
      g = mo.custom_gamma(t);
      s_val = mo.lamb_shift_const;
    }
    trace.gammas[0][i] = g;
    trace.lamb_shift[i] = s_val;
  }
  return trace;
}

struct CsvColumns {
  std::vector<double> cost, f, d;
};

CsvColumns cumulative_columns(const nmq::RateTrace& trace) {
  nmq::SampledFunction g = trace.channel(0);
  const std::size_t n = trace.times.size();
  CsvColumns out;
  out.cost.resize(n);
  out.f.resize(n);
  out.d.resize(n);
  double exponent = 0.0, f_acc = 0.0, d_acc = 0.0;
  out.cost[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    double a = trace.times[i - 1], b = trace.times[i];
    exponent += g.integrate(a, b, [](double v) { return std::abs(v) + v; });
    f_acc += g.integrate(a, b, [](double v) { return (std::abs(v) - v) / 2.0; });
    d_acc += g.integrate(a, b, [](double v) { return std::abs(v); });
    out.cost[i] = std::exp(exponent);
    out.f[i] = f_acc;
    out.d[i] = d_acc;
  }
  return out;
}

void write_rates_csv(const std::string& path, const ModelOptions& mo,
                     const nmq::RateTrace& trace, const CsvColumns& cols,
                     const std::string& extra = "") {
  std::ostringstream body;
  body << "# " << mo.describe() << " t_max=" << fmt(trace.times.back())
       << " steps=" << trace.times.size() - 1 << extra << "\n";
  body << "# units: t [s], gamma [1/s], S [rad/s], cost/F/D dimensionless, "
          "cumulative from t=0\n";
  body << "t,gamma,S,cost,F,D\n";
  for (std::size_t i = 0; i < trace.times.size(); ++i)
    body << fmt(trace.times[i]) << ',' << fmt(trace.gammas[0][i]) << ','
         << fmt(trace.lamb_shift[i]) << ',' << fmt(cols.cost[i]) << ','
         << fmt(cols.f[i]) << ',' << fmt(cols.d[i]) << "\n";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << body.str();
}

void lint_columns(const CsvColumns& cols) {
  for (std::size_t i = 0; i < cols.cost.size(); ++i) {
    double expect = std::exp(2.0 * (cols.d[i] - cols.f[i]));
    if (std::abs(cols.cost[i] - expect) > 1e-8 * cols.cost[i])
      throw std::logic_error("cost column fails the exp[2(D-F)] lint");
  }
}

int cmd_rates(const ModelOptions& mo, double t_max, int steps,
              const std::string& output) {
  auto trace = build_trace(mo, t_max, steps);
  auto cols = cumulative_columns(trace);
  lint_columns(cols);
  write_rates_csv(output, mo, trace, cols);
  std::cout << "wrote " << output << " (" << steps + 1 << " rows)\n";
  return 0;
}

int cmd_measures(const ModelOptions& mo, double t_max, int steps,
                 const std::string& output) {
  auto trace = build_trace(mo, t_max, steps);
  auto rep = nmq::cost_identity_check(trace, 0.0, t_max);
  std::ostringstream os;
  os << "t_from=" << fmt(rep.t_from) << "\n"
     << "t_to=" << fmt(rep.t_to) << "\n"
     << "F=" << fmt(rep.decay_rate_measure) << "\n"
     << "D=" << fmt(rep.markovian_bound) << "\n"
     << "cost=" << fmt(rep.cost_direct) << "\n"
     << "cost_via_identity=" << fmt(rep.cost_via_identity) << "\n";
  std::cout << os.str();
  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + output);
    f << "# " << mo.describe() << "\n" << os.str();
  }
  return 0;
}

int cmd_cost(const ModelOptions& mo, double t_max, int steps) {
  auto trace = build_trace(mo, t_max, steps);
  auto rep = nmq::cost_identity_check(trace, 0.0, t_max);
  std::cout << "cost=" << fmt(rep.cost_direct) << "\n";
  return 0;
}

int cmd_mitigate(const ModelOptions& mo, double t_max, long long shots,
                 std::uint64_t seed, const std::string& output) {
  nmq::DephasingModel model;
  if (mo.model == "nmr") {
    model = nmq::nmr_dephasing_model(mo.nmr());
  } else if (mo.model == "custom-dephasing") {
    model.canonical_rate = [mo](double t) { return mo.custom_gamma(t); };
    model.lamb_shift = [mo](double) { return mo.lamb_shift_const; };
  } else {
    std::cerr << "mitigate supports models nmr and custom-dephasing\n";
    return kExitUsage;
  }
  const nmq::Matrix obs = nmq::pauli_x();
  auto est = nmq::run_mitigated_estimate(model, obs, t_max, shots, seed);
  double ideal = nmq::ideal_expectation(model, obs, t_max);
  double z = est.std_error > 0.0
                 ? std::abs(est.mean - ideal) / est.std_error
                 : (est.mean == ideal ? 0.0 : HUGE_VAL);
  std::ostringstream os;
  os << "mean=" << fmt(est.mean) << "\n"
     << "std_error=" << fmt(est.std_error) << "\n"
     << "cost=" << fmt(est.cost) << "\n"
     << "ideal=" << fmt(ideal) << "\n"
     << "z_score=" << fmt(z) << "\n"
     << "n_trajectories=" << est.n_trajectories << "\n"
     << "seed=" << est.seed << "\n"
     << "n_plus=" << est.n_plus << "\n"
     << "n_minus=" << est.n_minus << "\n";
  std::cout << os.str();
  if (!output.empty()) {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + output);
    f << "# " << mo.describe() << " t_max=" << fmt(t_max) << "\n" << os.str();
  }
  return z <= 5.0 ? 0 : kExitGate;
}

int cmd_figure(int id, const std::string& outdir) {
  std::filesystem::create_directories(outdir);
  auto path = [&outdir](const std::string& name) {
    return (std::filesystem::path(outdir) / name).string();
  };
  if (id == 1) {
    ModelOptions mo;
    mo.model = "nmr";
    mo.t2 = 6.5e-3;  // caption gives a time; rate taken as its inverse
    auto trace = build_trace(mo, 15e-3, 3000);
    auto cols = cumulative_columns(trace);
    lint_columns(cols);
    write_rates_csv(path("gamma.csv"), mo, trace, cols);
    write_rates_csv(path("cost.csv"), mo, trace, cols);
    std::cout << "wrote " << path("gamma.csv") << " and " << path("cost.csv")
              << "\n";
    return 0;
  }
  if (id == 2 || id == 3) {
    const char* base = (id == 2) ? "gamma" : "cost";
    for (int set = 1; set <= 2; ++set) {
      ModelOptions mo;
      mo.model = "dispersive";
      mo.kappa = 1.0;
      mo.abs_alpha_sq = (set == 1) ? 1.0 : 0.25;
      mo.chi_over_kappa = (set == 1) ? 3.0 : 12.0;
      auto trace = build_trace(mo, 5.0, 4000);
      auto cols = cumulative_columns(trace);
      lint_columns(cols);
      std::string name = std::string(base) + "_set" + std::to_string(set) + ".csv";
      write_rates_csv(path(name), mo, trace, cols);
      std::cout << "wrote " << path(name) << "\n";
    }
    return 0;
  }
  std::cerr << "figure id must be 1, 2 or 3\n";
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time-local open-system rates, non-Markovianity measures and "
               "Monte Carlo error mitigation"};
  app.set_config("--config", "", "flat key=value config file; flags override");
  app.require_subcommand(1);

  ModelOptions mo;
  double t_max = -1.0;
  int steps = 2000;
  long long shots = 100000;
  std::uint64_t seed = 7;
  std::string output, outdir = ".";
  int figure_id = 1;

  auto* rates = app.add_subcommand("rates", "rate trace and cumulative cost/F/D CSV");
  add_model_flags(rates, mo);
  rates->add_option("--t-max", t_max, "end time [s]");
  rates->add_option("--steps", steps, "grid steps")->check(CLI::PositiveNumber);
  rates->add_option("--output", output, "CSV path")->required();

  auto* measures = app.add_subcommand("measures", "F, D and cost summary");
  add_model_flags(measures, mo);
  measures->add_option("--t-max", t_max, "end time [s]");
  measures->add_option("--steps", steps, "grid steps")->check(CLI::PositiveNumber);
  measures->add_option("--output", output, "report path");

  auto* cost = app.add_subcommand("cost", "sampling cost C(T)");
  add_model_flags(cost, mo);
  cost->add_option("--t-max", t_max, "end time [s]");
  cost->add_option("--steps", steps, "grid steps")->check(CLI::PositiveNumber);

  auto* mitigate = app.add_subcommand("mitigate", "Monte Carlo mitigated estimate");
  add_model_flags(mitigate, mo);
  mitigate->add_option("--t-max", t_max, "end time [s]");
  mitigate->add_option("--shots", shots, "trajectories")->check(CLI::PositiveNumber);
  mitigate->add_option("--seed", seed, "RNG seed");
  mitigate->add_option("--output", output, "report path");

  auto* figure = app.add_subcommand("figure", "canned parameter-set CSV traces");
  figure->add_option("--id", figure_id, "1, 2 or 3")->required();
  figure->add_option("--outdir", outdir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (t_max <= 0.0) t_max = default_t_max(mo);

  try {
    if (rates->parsed()) return cmd_rates(mo, t_max, steps, output);
    if (measures->parsed()) return cmd_measures(mo, t_max, steps, output);
    if (cost->parsed()) return cmd_cost(mo, t_max, steps);
    if (mitigate->parsed()) return cmd_mitigate(mo, t_max, shots, seed, output);
    if (figure->parsed()) return cmd_figure(figure_id, outdir);
  } catch (const nmq::DivergenceError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nmq::TruncationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const nmq::IntegrationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
