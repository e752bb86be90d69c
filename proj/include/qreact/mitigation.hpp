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

// Measurement-calibration matrices and readout-error correction of counts.

#include "qreact/backends.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace qreact {

enum class CalibrationMethod { Complete, Tensored };
enum class MitigationMethod { PseudoInverse, LeastSquares };

std::string to_string(CalibrationMethod m);
std::string to_string(MitigationMethod m);
CalibrationMethod parse_calibration_method(std::string_view s);
MitigationMethod parse_mitigation_method(std::string_view s);

/// A(i, j) = P(measure bitstring i | prepared basis state j), with basis
/// index bit k = qubit k.
struct CalibrationMatrix {
  int num_qubits = 0;
  Eigen::MatrixXd matrix;
  CalibrationMethod method = CalibrationMethod::Complete;
  std::uint64_t shots = 0;  // 0 for analytic matrices

  /// Column-stochastic within 1e-9, entries in [0, 1].
  void validate() const;
};

/// Runs a circuit (X gates preparing a basis state) measuring every qubit in
/// the Z basis.
using CalibrationExecutor =
    std::function<Counts(const Circuit& c, std::uint64_t shots)>;

/// complete: one circuit per basis state, column j = empirical distribution.
/// tensored: all-zeros and all-ones circuits give per-qubit 2x2 matrices
/// whose Kronecker product (qubit n-1 outermost) is A.
CalibrationMatrix build_calibration(int num_qubits,
                                    const CalibrationExecutor& executor,
                                    std::uint64_t shots,
                                    CalibrationMethod method);

/// Infinite-shot calibration: the exact response of the noise model.
CalibrationMatrix analytic_calibration(int num_qubits, const NoiseModel& nm,
                                       CalibrationMethod method =
                                           CalibrationMethod::Complete);

/// Executor that samples the readout channel of `nm` on the ideal output of
/// each calibration circuit (gate noise included when present).
CalibrationExecutor sampling_executor(const NoiseModel& nm,
                                      std::uint64_t seed);

using QuasiDistribution = std::map<std::string, double>;

struct MitigationResult {
  QuasiDistribution quasi;
  /// Set when A was numerically singular and a ridge-regularized inverse
  /// replaced the pseudo-inverse.
  bool regularized = false;
};

/// Solves A x = c. pseudo_inverse: x = A^+ c. least_squares: minimizes
/// ||A x - c|| over x >= 0 with sum(x) = sum(c).
Eigen::VectorXd mitigate_vector(const Eigen::VectorXd& counts,
                                const Eigen::MatrixXd& a,
                                MitigationMethod method,
                                bool* regularized = nullptr);

MitigationResult mitigate(const Counts& counts, const CalibrationMatrix& cal,
                          MitigationMethod method =
                              MitigationMethod::LeastSquares);

/// Dense count vector indexed by basis index.
Eigen::VectorXd counts_vector(const Counts& counts);

/// Rebuilds a calibration when it is older than a configured number of
/// uses or seconds. Without limits the matrix is built once.
class CalibrationSchedule {
 public:
  using Builder = std::function<CalibrationMatrix()>;
  using Clock = std::function<double()>;

  explicit CalibrationSchedule(
      Builder builder, std::optional<std::uint64_t> max_age_uses = {},
      std::optional<double> max_age_seconds = {}, Clock clock = {});

  /// Returns the current matrix, rebuilding first if it is stale.
  const CalibrationMatrix& acquire();
  int rebuild_count() const noexcept { return rebuilds_; }

 private:
  Builder builder_;
  std::optional<std::uint64_t> max_uses_;
  std::optional<double> max_seconds_;
  Clock clock_;
  std::optional<CalibrationMatrix> current_;
  std::uint64_t uses_ = 0;
  double built_at_ = 0.0;
  int rebuilds_ = 0;
};

}  // namespace qreact
