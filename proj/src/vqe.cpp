// Copyright 2026 The qreact Authors
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

#include "qreact/vqe.hpp"

#include "qreact/error.hpp"
#include "qreact/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

namespace qreact {

std::string to_string(BackendKind k) {
  return k == BackendKind::Exact ? "exact" : "sampled";
}

BackendKind parse_backend_kind(std::string_view s) {
  if (s == "exact" || s == "statevector") return BackendKind::Exact;
  if (s == "sampled" || s == "qasm") return BackendKind::Sampled;
  throw ValidationError("unknown backend '" + std::string(s) + "'");
}

namespace {

constexpr std::uint64_t kCalibrationStream = 0x63616c6962726174ull;

QuantumState prepare(const Circuit& c, const NoiseModel& noise) {
  if (noise.has_gate_noise()) return run_density_matrix(c, noise);
  return run_statevector(c);
}

}  // namespace

EnergyEstimator::EnergyEstimator(AnsatzTemplate ansatz, QubitHamiltonian h,
                                 BackendConfig cfg)
    : ansatz_(std::move(ansatz)), h_(simplify(h)), cfg_(std::move(cfg)) {
  if (h_.num_qubits() != ansatz_.num_qubits)
    throw DimensionError("Hamiltonian acts on " +
                         std::to_string(h_.num_qubits()) +
                         " qubits, ansatz on " +
                         std::to_string(ansatz_.num_qubits));
  cfg_.noise.validate(h_.num_qubits());
  if (cfg_.kind == BackendKind::Exact) return;
  if (cfg_.shots == 0 && !cfg_.analytic)
    throw ValidationError("sampled backend needs shots > 0");

  const auto& terms = h_.terms();
  for (std::size_t j = 0; j < terms.size(); ++j) {
    bool placed = false;
    if (cfg_.group_commuting) {
      for (std::size_t g = 0; g < groups_.size() && !placed; ++g) {
        bool fits = true;
        for (std::size_t k : groups_[g])
          fits = fits && qubitwise_commute(terms[k].pauli, terms[j].pauli);
        if (fits) {
          groups_[g].push_back(j);
          auto& basis = group_basis_[g];
          basis = PauliString(basis.num_qubits(),
                              basis.x_mask() | terms[j].pauli.x_mask(),
                              basis.z_mask() | terms[j].pauli.z_mask());
          placed = true;
        }
      }
    }
    if (!placed) {
      groups_.push_back({j});
      group_basis_.push_back(terms[j].pauli);
    }
  }

  if (cfg_.mitigation) {
    const int n = h_.num_qubits();
    const MitigationConfig mc = *cfg_.mitigation;
    CalibrationSchedule::Builder builder;
    if (cfg_.analytic) {
      builder = [n, noise = cfg_.noise, mc] {
        return analytic_calibration(n, noise, mc.calibration);
      };
    } else {
      const std::uint64_t shots = mc.shots ? mc.shots : cfg_.shots;
      auto executor =
          sampling_executor(cfg_.noise, derive_seed(cfg_.seed, kCalibrationStream));
      builder = [n, executor, shots, mc] {
        return build_calibration(n, executor, shots, mc.calibration);
      };
    }
    calibration_ = std::make_unique<CalibrationSchedule>(
        std::move(builder), mc.max_age_evaluations, mc.max_age_seconds);
  }
}

int EnergyEstimator::calibration_rebuilds() const {
  return calibration_ ? calibration_->rebuild_count() : 0;
}

double EnergyEstimator::term_estimate(const QuantumState& state,
                                      const PauliString& basis,
                                      std::uint64_t support, std::uint64_t seed,
                                      const CalibrationMatrix* cal) const {
  const int n = h_.num_qubits();
  Eigen::VectorXd weights;
  if (cfg_.analytic) {
    weights = term_distribution(state, basis, cfg_.noise);
  } else {
    weights = counts_vector(measure_term(state, basis, cfg_.shots, seed, cfg_.noise));
  }
  if (cal) weights = mitigate_vector(weights, cal->matrix, cfg_.mitigation->method);
  QuasiDistribution dist;
  for (Eigen::Index b = 0; b < weights.size(); ++b)
    if (weights(b) != 0.0) dist[bitstring(b, n)] = weights(b);
  return counts_expectation(dist, support).value;
}

EnergySample EnergyEstimator::evaluate_state(const QuantumState& state) {
  const std::uint64_t eval = evaluations_++;
  const auto& terms = h_.terms();
  EnergySample out;
  out.term_values.assign(terms.size(), 0.0);

  if (cfg_.kind == BackendKind::Exact) {
    out.energy = h_.constant();
    for (std::size_t j = 0; j < terms.size(); ++j) {
      const cplx v = std::visit(
          [&](const auto& s) { return pauli_expectation(terms[j].pauli, s); },
          state);
      out.term_values[j] = v.real();
      out.energy += terms[j].coeff * v.real();
    }
    return out;
  }

  const CalibrationMatrix* cal = calibration_ ? &calibration_->acquire() : nullptr;

  // group g measured once; every member term reads the same weights
  auto run_group = [&](std::size_t g) {
    const std::uint64_t seed = derive_seed(cfg_.seed, eval, g);
    for (std::size_t j : groups_[g])
      out.term_values[j] = term_estimate(state, group_basis_[g],
                                         terms[j].pauli.support(), seed, cal);
  };
  const int threads = std::max(1, cfg_.threads);
  if (threads == 1 || groups_.size() < 2) {
    for (std::size_t g = 0; g < groups_.size(); ++g) run_group(g);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t g = static_cast<std::size_t>(t); g < groups_.size();
             g += static_cast<std::size_t>(threads))
          run_group(g);
      });
    for (auto& th : pool) th.join();
  }

  out.energy = h_.constant();
  double var = 0.0;
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double m = out.term_values[j];
    out.energy += terms[j].coeff * m;
    var += terms[j].coeff * terms[j].coeff * std::max(0.0, 1.0 - m * m);
  }
  out.std_error = cfg_.analytic ? 0.0 : std::sqrt(var / static_cast<double>(cfg_.shots));
  return out;
}

EnergySample EnergyEstimator::operator()(const std::vector<double>& theta) {
  return evaluate_state(
      prepare(bind_parameters(ansatz_, theta), cfg_.noise));
}

EnergySample evaluate_energy(const std::vector<double>& theta,
                             const AnsatzTemplate& ansatz,
                             const QubitHamiltonian& h,
                             const BackendConfig& cfg) {
  EnergyEstimator est(ansatz, h, cfg);
  return est(theta);
}

std::vector<double> VqeTrace::energies() const {
  std::vector<double> e;
  e.reserve(records.size());
  for (const auto& r : records) e.push_back(r.sample.energy);
  return e;
}

std::vector<double> initial_parameters(
    int num_parameters, std::optional<std::uint64_t> perturbation_seed) {
  if (num_parameters < 0) throw ValidationError("negative parameter count");
  std::vector<double> theta(static_cast<std::size_t>(num_parameters), 0.0);
  if (perturbation_seed) {
    Rng rng(*perturbation_seed);
    for (auto& x : theta) x = kInitialPerturbation * (2.0 * rng.uniform() - 1.0);
  }
  return theta;
}

double spsa_step_gain(const SpsaConfig& cfg, int k) {
  return cfg.a / std::pow(k + cfg.stability, cfg.alpha);
}

double spsa_perturbation(const SpsaConfig& cfg, int k) {
  return cfg.c / std::pow(k, cfg.gamma);
}

VqeTrace spsa_minimize(const Objective& objective, std::vector<double> theta,
                       const SpsaConfig& cfg_in) {
  if (cfg_in.iterations < 1) throw ValidationError("SPSA needs >= 1 iteration");
  if (!(cfg_in.a > 0.0) || !(cfg_in.c > 0.0))
    throw ValidationError("SPSA gains a and c must be positive");
  SpsaConfig cfg = cfg_in;
  const std::size_t m = theta.size();
  VqeTrace trace;
  trace.optimizer = "spsa";
  trace.seed = cfg.seed;

  auto shifted = [&](const std::vector<int>& delta, double scale) {
    std::vector<double> t = theta;
    for (std::size_t i = 0; i < m; ++i) t[i] += scale * delta[i];
    return t;
  };
  auto checked = [&](const std::vector<double>& t) {
    EnergySample s = objective(t);
    ++trace.evaluations;
    if (!std::isfinite(s.energy))
      throw NumericalError("objective returned a non-finite energy");
    return s;
  };

  if (cfg.calibrate && m > 0) {
    Rng cal_rng(derive_seed(cfg.seed, 0x5350534163616cull));
    double avg = 0.0;
    const int pairs = std::max(1, cfg.calibration_pairs);
    for (int p = 0; p < pairs; ++p) {
      std::vector<int> delta(m);
      for (auto& d : delta) d = cal_rng.sign();
      const double ep = checked(shifted(delta, cfg.c)).energy;
      const double em = checked(shifted(delta, -cfg.c)).energy;
      avg += std::abs(ep - em) / (2.0 * cfg.c);
    }
    avg /= pairs;
    if (avg > 0.0)
      cfg.a = cfg.target_step * std::pow(cfg.stability + 1.0, cfg.alpha) / avg;
  }
  trace.hyperparameters = {{"iterations", cfg.iterations}, {"a", cfg.a},
                           {"c", cfg.c},                   {"alpha", cfg.alpha},
                           {"gamma", cfg.gamma},           {"A", cfg.stability}};

  Rng rng(cfg.seed);
  std::vector<int> delta(m);
  for (int k = 1; k <= cfg.iterations; ++k) {
    const double ck = spsa_perturbation(cfg, k);
    const double ak = spsa_step_gain(cfg, k);
    for (auto& d : delta) d = rng.sign();
    const EnergySample plus = checked(shifted(delta, ck));
    const EnergySample minus = checked(shifted(delta, -ck));

    TraceRecord rec;
    rec.iteration = k;
    rec.parameters = theta;
    if (cfg.evaluate_center) {
      rec.sample = checked(theta);
    } else {
      rec.sample.energy = 0.5 * (plus.energy + minus.energy);
      rec.sample.std_error =
          0.5 * std::hypot(plus.std_error, minus.std_error);
    }
    trace.records.push_back(std::move(rec));

    const double slope = (plus.energy - minus.energy) / (2.0 * ck);
    for (std::size_t i = 0; i < m; ++i) theta[i] -= ak * slope * delta[i];
  }
  trace.final_parameters = theta;
  return trace;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

VqeTrace cg_minimize(const Objective& objective, const GradientFn& gradient_fn,
                     std::vector<double> theta, const CgConfig& cfg) {
  VqeTrace trace;
  trace.optimizer = "cg";
  trace.hyperparameters = {{"max_iterations", cfg.max_iterations},
                           {"energy_tolerance", cfg.energy_tolerance},
                           {"gradient_tolerance", cfg.gradient_tolerance},
                           {"armijo_c1", cfg.armijo_c1},
                           {"shrink", cfg.shrink}};
  const std::size_t m = theta.size();
  const int restart = cfg.restart_every > 0 ? cfg.restart_every
                                            : std::max<int>(1, static_cast<int>(m));

  auto energy_at = [&](const std::vector<double>& t) {
    EnergySample s = objective(t);
    ++trace.evaluations;
    if (!std::isfinite(s.energy))
      throw NumericalError("objective returned a non-finite energy");
    return s;
  };
  auto grad_at = [&](const std::vector<double>& t) {
    auto g = gradient_fn(t);
    for (double x : g)
      if (!std::isfinite(x)) throw NumericalError("non-finite gradient");
    return g;
  };

  EnergySample current = energy_at(theta);
  std::vector<double> g = grad_at(theta);
  if (m == 0 || max_abs(g) < cfg.gradient_tolerance) {
    trace.records.push_back({1, theta, current});
    trace.final_parameters = theta;
    return trace;
  }

  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = -g[i];

  for (int k = 1; k <= cfg.max_iterations; ++k) {
    double slope = dot(g, d);
    if (slope >= 0.0) {
      for (std::size_t i = 0; i < m; ++i) d[i] = -g[i];
      slope = dot(g, d);
    }

    double step = cfg.initial_step;
    std::vector<double> trial(m);
    EnergySample next;
    bool accepted = false;
    for (int shrinks = 0; shrinks < 60; ++shrinks) {
      for (std::size_t i = 0; i < m; ++i) trial[i] = theta[i] + step * d[i];
      next = energy_at(trial);
      if (next.energy <= current.energy + cfg.armijo_c1 * step * slope) {
        accepted = true;
        break;
      }
      step *= cfg.shrink;
    }
    if (!accepted) {
      // No descent along d even for tiny steps: converged to precision.
      trace.records.push_back({k, theta, current});
      break;
    }

    const std::vector<double> g_next = grad_at(trial);
    const double change = std::abs(next.energy - current.energy);
    theta = trial;
    trace.records.push_back({k, theta, next});
    current = next;
    if (change < cfg.energy_tolerance || max_abs(g_next) < cfg.gradient_tolerance)
      break;

    double beta = 0.0;
    if (k % restart != 0) {
      double num = 0.0;
      for (std::size_t i = 0; i < m; ++i) num += g_next[i] * (g_next[i] - g[i]);
      beta = std::max(0.0, num / dot(g, g));
    }
    for (std::size_t i = 0; i < m; ++i) d[i] = -g_next[i] + beta * d[i];
    g = g_next;
  }
  trace.final_parameters = theta;
  return trace;
}

GradientResult gradient(const std::vector<double>& theta,
                        const AnsatzTemplate& ansatz,
                        const QubitHamiltonian& h, GradientMethod method) {
  if (static_cast<int>(theta.size()) != ansatz.num_parameters)
    throw DimensionError("parameter vector length does not match template");
  if (h.num_qubits() != ansatz.num_qubits)
    throw DimensionError("Hamiltonian width does not match template");
  auto energy = [&](const std::vector<double>& t) {
    return expectation(h, run_statevector(bind_parameters(ansatz, t)));
  };
  const auto shift_ok = parameter_shift_slots(ansatz);
  GradientResult r;
  r.values.resize(theta.size());
  std::vector<double> t = theta;
  for (std::size_t i = 0; i < theta.size(); ++i) {
    const bool use_shift = method == GradientMethod::ParameterShift && shift_ok[i];
    if (method == GradientMethod::ParameterShift && !shift_ok[i]) r.fell_back = true;
    const double hstep = use_shift ? std::numbers::pi / 2 : kCentralDifferenceStep;
    t[i] = theta[i] + hstep;
    const double ep = energy(t);
    t[i] = theta[i] - hstep;
    const double em = energy(t);
    t[i] = theta[i];
    r.values[i] = use_shift ? 0.5 * (ep - em) : (ep - em) / (2.0 * hstep);
  }
  return r;
}

FinalReport report_final(const std::vector<double>& e, int window, int span) {
  if (window < 1) throw ValidationError("window must be >= 1");
  const int n = static_cast<int>(e.size());
  if (n < window)
    throw ValidationError("trace has " + std::to_string(n) +
                          " points, fewer than the window of " +
                          std::to_string(window));
  const int first = n - std::min(std::max(span, window), n);
  FinalReport best{std::numeric_limits<double>::infinity(), 0.0, 0};
  int best_start = first;
  // offsets from a shared reference keep constant traces exact
  const double ref = e[first];
  for (int s = first; s + window <= n; ++s) {
    double sum = 0.0;
    for (int i = s; i < s + window; ++i) sum += e[i] - ref;
    const double mean = ref + sum / window;
    // ties resolve to the later window
    if (mean <= best.energy) {
      best.energy = mean;
      best_start = s;
    }
  }
  double ss = 0.0;
  for (int i = best_start; i < best_start + window; ++i)
    ss += (e[i] - best.energy) * (e[i] - best.energy);
  best.uncertainty = window > 1 ? std::sqrt(ss / (window - 1)) : 0.0;
  best.window_start = best_start + 1;
  return best;
}

FinalReport report_final(const VqeTrace& trace, int window, int span) {
  FinalReport r = report_final(trace.energies(), window, span);
  r.window_start = trace.records[static_cast<std::size_t>(r.window_start - 1)].iteration;
  return r;
}

}  // namespace qreact
