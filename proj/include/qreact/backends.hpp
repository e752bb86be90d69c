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

// Ideal statevector and noisy density-matrix execution, Pauli-basis
// measurement and shot sampling. Basis index bit k is qubit k; measured
// bitstrings put qubit k at character k.

#include "qreact/ansatz.hpp"
#include "qreact/pauli.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace qreact {

inline constexpr int kDefaultStatevectorCap = 20;
inline constexpr int kDefaultDensityCap = 10;

using Statevector = Eigen::VectorXcd;
using DensityMatrix = Eigen::MatrixXcd;
using QuantumState = std::variant<Statevector, DensityMatrix>;

/// 2x2 unitary of a single-qubit gate (bound angle).
Eigen::Matrix2cd gate_matrix(const Gate& g);

void apply_gate(Statevector& psi, const Gate& g);
void apply_gate(DensityMatrix& rho, const Gate& g);

Statevector basis_state(int num_qubits, std::uint64_t index = 0);
Statevector run_statevector(const Circuit& c,
                            int cap = kDefaultStatevectorCap);

/// Per-qubit readout flips: p10 = P(read 1 | 0), p01 = P(read 0 | 1).
struct ReadoutError {
  double p10 = 0.0;
  double p01 = 0.0;
};

struct NoiseModel {
  /// One entry per qubit; qubits without an entry read out perfectly.
  std::vector<ReadoutError> readout;
  /// Optional correlated 2^n response matrix R[i][j] = P(read i | true j);
  /// replaces `readout` when present.
  std::optional<Eigen::MatrixXd> response;
  double depolarizing_1q = 0.0;
  double depolarizing_2q = 0.0;

  static NoiseModel uniform_readout(int num_qubits, double p10, double p01);

  bool has_gate_noise() const {
    return depolarizing_1q > 0.0 || depolarizing_2q > 0.0;
  }
  bool has_readout_noise() const;
  void validate(int num_qubits) const;
  /// Short human-readable description for manifests.
  std::string describe() const;
};

/// rho -> (1-p) rho + p (Tr_Q rho) (x) I_Q / 2^|Q|.
void apply_depolarizing(DensityMatrix& rho, std::span<const int> qubits,
                        double p);

/// Gates act as U rho U^dagger; after each gate the depolarizing channel
/// for its arity runs on the gate's qubits. Readout noise is not applied.
DensityMatrix run_density_matrix(const Circuit& c, const NoiseModel& nm,
                                 int cap = kDefaultDensityCap);

int num_qubits_of(const QuantumState& s);

/// Z-basis probabilities after rotating every qubit into the eigenbasis of
/// its letter in `basis` (X: H; Y: Sdg then H).
Eigen::VectorXd rotated_probabilities(const QuantumState& s,
                                      const PauliString& basis);

/// Applies the readout channel of `nm` to a probability vector over n qubits.
Eigen::VectorXd apply_readout_channel(const Eigen::VectorXd& probs,
                                      const NoiseModel& nm);

/// Exact post-rotation, post-readout distribution of a term measurement.
Eigen::VectorXd term_distribution(const QuantumState& s,
                                  const PauliString& term,
                                  const NoiseModel& nm);

std::string bitstring(std::uint64_t index, int num_qubits);
[[noreturn]] void throw_empty_counts();
std::uint64_t bitstring_index(const std::string& bits);

struct Counts {
  int num_qubits = 0;
  std::uint64_t shots = 0;
  std::map<std::string, std::uint64_t> histogram;

  friend bool operator==(const Counts&, const Counts&) = default;
};

/// Draws `shots` samples from a categorical distribution (normalized
/// internally) by inverse-CDF lookup on Rng uniforms.
Counts sample_counts(const Eigen::VectorXd& probs, int num_qubits,
                     std::uint64_t shots, std::uint64_t seed);

Counts measure_term(const QuantumState& s, const PauliString& term,
                    std::uint64_t shots, std::uint64_t seed,
                    const NoiseModel& nm);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Parity estimator over the qubits in `support`:
/// sum_b w(b) (-1)^{popcount(b & support)} / sum_b w(b), with
/// stderr sqrt((1 - value^2) / sum_b w(b)). Works for integer counts and for
/// real-valued quasi-distributions.
template <class Weight>
Estimate counts_expectation(const std::map<std::string, Weight>& hist,
                            std::uint64_t support);

Estimate counts_expectation(const Counts& counts, std::uint64_t support);

/// Bit mask with bit k set for every k in `qubits`.
std::uint64_t qubit_mask(std::span<const int> qubits);

template <class Weight>
Estimate counts_expectation(const std::map<std::string, Weight>& hist,
                            std::uint64_t support) {
  double total = 0.0;
  double signed_sum = 0.0;
  for (const auto& [bits, w] : hist) {
    const double weight = static_cast<double>(w);
    const int parity = std::popcount(bitstring_index(bits) & support) & 1;
    total += weight;
    signed_sum += parity ? -weight : weight;
  }
  if (hist.empty() || total <= 0.0)
    throw_empty_counts();
  const double value = signed_sum / total;
  const double var = std::max(0.0, 1.0 - value * value);
  return {value, std::sqrt(var / total)};
}

}  // namespace qreact
