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

#pragma once

// Energy evaluation on the exact and sampled backends, the SPSA and
// conjugate-gradient minimizers, and the moving-window final report.

#include "qreact/ansatz.hpp"
#include "qreact/backends.hpp"
#include "qreact/mitigation.hpp"
#include "qreact/pauli.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qreact {

struct EnergySample {
  double energy = 0.0;
  /// Zero on exact backends.
  double std_error = 0.0;
  /// Per-term estimates <P_j>, in Hamiltonian term order.
  std::vector<double> term_values;
};

enum class BackendKind { Exact, Sampled };

std::string to_string(BackendKind k);
BackendKind parse_backend_kind(std::string_view s);

struct MitigationConfig {
  CalibrationMethod calibration = CalibrationMethod::Complete;
  MitigationMethod method = MitigationMethod::LeastSquares;
  /// Shots per calibration circuit; 0 uses the measurement shot count.
  std::uint64_t shots = 0;
  /// Rebuild the calibration after this many energy evaluations.
  std::optional<std::uint64_t> max_age_evaluations;
  std::optional<double> max_age_seconds;
};

struct BackendConfig {
  BackendKind kind = BackendKind::Exact;
  std::uint64_t shots = 8192;
  std::uint64_t seed = 0;
  NoiseModel noise;
  /// Sampled backend only: use the exact post-noise distribution instead of
  /// drawing shots (the infinite-shot limit).
  bool analytic = false;
  /// Measure qubit-wise commuting groups in a shared basis.
  bool group_commuting = false;
  std::optional<MitigationConfig> mitigation;
  /// Worker threads for per-term measurement; results do not depend on it.
  int threads = 1;
};

/// Stateful energy evaluator. Each call advances an evaluation counter that,
/// together with the run seed and the term index, fixes every sampling seed.
class EnergyEstimator {
 public:
  EnergyEstimator(AnsatzTemplate ansatz, QubitHamiltonian h,
                  BackendConfig cfg);

  EnergySample operator()(const std::vector<double>& theta);

  /// Estimate for an already prepared state.
  EnergySample evaluate_state(const QuantumState& state);

  std::uint64_t evaluations() const noexcept { return evaluations_; }
  int calibration_rebuilds() const;
  const AnsatzTemplate& ansatz() const noexcept { return ansatz_; }
  const QubitHamiltonian& hamiltonian() const noexcept { return h_; }
  const BackendConfig& config() const noexcept { return cfg_; }

 private:
  double term_estimate(const QuantumState& state, const PauliString& basis,
                       std::uint64_t support, std::uint64_t seed,
                       const CalibrationMatrix* cal) const;

  AnsatzTemplate ansatz_;
  QubitHamiltonian h_;
  BackendConfig cfg_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<PauliString> group_basis_;
  std::unique_ptr<CalibrationSchedule> calibration_;
  std::uint64_t evaluations_ = 0;
};

/// One-shot evaluation (evaluation index 0).
EnergySample evaluate_energy(const std::vector<double>& theta,
                             const AnsatzTemplate& ansatz,
                             const QubitHamiltonian& h,
                             const BackendConfig& cfg);

using Objective = std::function<EnergySample(const std::vector<double>&)>;

struct TraceRecord {
  int iteration = 0;
  std::vector<double> parameters;
  EnergySample sample;
};

struct VqeTrace {
  std::string optimizer;
  std::map<std::string, double> hyperparameters;
  std::uint64_t seed = 0;
  std::vector<TraceRecord> records;
  std::vector<double> final_parameters;
  std::uint64_t evaluations = 0;

  std::vector<double> energies() const;
};

inline constexpr double kInitialPerturbation = 0.1;

/// All zeros (the reference determinant under every ansatz), plus a seeded
/// uniform(-0.1, 0.1) offset per parameter when a seed is given.
std::vector<double> initial_parameters(
    int num_parameters, std::optional<std::uint64_t> perturbation_seed = {});

struct SpsaConfig {
  int iterations = 500;
  double a = 0.6283;
  double c = 0.1;
  double alpha = 0.602;
  double gamma = 0.101;
  double stability = 0.0;  // A
  std::uint64_t seed = 0;
  /// Chooses `a` so the first step moves parameters by `target_step`.
  bool calibrate = false;
  double target_step = 0.1;
  int calibration_pairs = 25;
  /// Record E(theta_k) from a third evaluation instead of the mean of the
  /// two perturbed evaluations.
  bool evaluate_center = false;
};

/// Gain a_k = a / (k + A)^alpha, perturbation c_k = c / k^gamma (k from 1).
double spsa_step_gain(const SpsaConfig& cfg, int k);
double spsa_perturbation(const SpsaConfig& cfg, int k);

VqeTrace spsa_minimize(const Objective& objective, std::vector<double> theta0,
                       const SpsaConfig& cfg);

struct CgConfig {
  int max_iterations = 200;
  double energy_tolerance = 1e-9;
  double gradient_tolerance = 1e-6;
  double armijo_c1 = 1e-4;
  double shrink = 0.5;
  /// Restart period; 0 uses the number of parameters.
  int restart_every = 0;
  double initial_step = 1.0;
};

using GradientFn = std::function<std::vector<double>(const std::vector<double>&)>;

/// Polak-Ribiere nonlinear CG with Armijo backtracking.
VqeTrace cg_minimize(const Objective& objective, const GradientFn& gradient,
                     std::vector<double> theta0, const CgConfig& cfg = {});

enum class GradientMethod { ParameterShift, CentralDifference };

struct GradientResult {
  std::vector<double> values;
  /// True when some parameter could not use the requested method and fell
  /// back to central differences.
  bool fell_back = false;
};

inline constexpr double kCentralDifferenceStep = 1e-5;

/// Exact-backend gradient.
GradientResult gradient(const std::vector<double>& theta,
                        const AnsatzTemplate& ansatz,
                        const QubitHamiltonian& h, GradientMethod method);

struct FinalReport {
  double energy = 0.0;
  double uncertainty = 0.0;
  /// 1-based iteration index of the winning window's first point.
  int window_start = 0;
};

/// Lowest mean over contiguous windows of `window` points within the last
/// min(span, length) energies. Uncertainty is the winning window's sample
/// standard deviation.
FinalReport report_final(const std::vector<double>& energies, int window = 10,
                         int span = 100);
FinalReport report_final(const VqeTrace& trace, int window = 10,
                         int span = 100);

}  // namespace qreact
