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

// Trial-wavefunction circuit families and Hartree-Fock state preparation.

#include "qreact/fermion.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qreact {

enum class GateKind { X, H, S, Sdg, Rx, Ry, Rz, CNOT };

std::string to_string(GateKind k);

/// One gate. For CNOT `qubit` is the control and `target` the target.
/// Rotations read their angle from `theta`, or, in a template with
/// slot >= 0, from scale * parameters[slot].
struct Gate {
  GateKind kind = GateKind::X;
  int qubit = 0;
  int target = -1;
  double theta = 0.0;
  int slot = -1;
  double scale = 1.0;

  bool is_rotation() const {
    return kind == GateKind::Rx || kind == GateKind::Ry || kind == GateKind::Rz;
  }
  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Fully bound gate sequence applied left to right to |0...0>.
struct Circuit {
  int width = 0;
  std::vector<Gate> gates;

  int cnot_count() const;
  /// One gate per line: "KIND q[,q2][,theta=<12 decimals>]".
  std::string dump() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

enum class AnsatzKind { Ry, RyRz, SwapRz, Uccsd };

std::string to_string(AnsatzKind k);
AnsatzKind parse_ansatz_kind(std::string_view s);

/// Fermionic context needed to build the UCCSD cluster operator.
struct UccsdContext {
  int n_spatial = 2;
  int n_alpha = 1;
  int n_beta = 1;
  Mapping mapping = Mapping::Parity;
  bool tapered = true;

  int num_qubits() const { return 2 * n_spatial - (tapered ? 2 : 0); }
};

struct AnsatzTemplate {
  AnsatzKind kind = AnsatzKind::Ry;
  int num_qubits = 0;
  int depth = 1;
  std::string hf_bits;
  int num_parameters = 0;
  /// X gates preparing hf_bits come first, then the variational body.
  std::vector<Gate> gates;

  int cnot_count() const;
};

/// Occupation bitstring of the Hartree-Fock determinant in qubit order
/// (character k = qubit k) under the given encoding.
std::string hartree_fock_bits(int n_alpha, int n_beta, int n_spin_orbitals,
                              Mapping mapping, bool tapered);

/// UCCSD without a context uses the default one (two spatial orbitals, one
/// electron of each spin, tapered parity encoding).
AnsatzTemplate build_ansatz(AnsatzKind kind, int num_qubits, int depth,
                            std::string_view hf_bits,
                            const std::optional<UccsdContext>& uccsd = {});

struct ResourceCounts {
  int cnots = 0;
  int params = 0;

  friend bool operator==(const ResourceCounts&, const ResourceCounts&) = default;
};

/// Closed forms for the heuristic families; UCCSD is counted from the built
/// circuit after cancellation.
ResourceCounts resource_counts(AnsatzKind kind, int num_qubits, int depth,
                               const std::optional<UccsdContext>& uccsd = {});

Circuit bind_parameters(const AnsatzTemplate& t,
                        const std::vector<double>& theta);

/// Slots that appear in exactly one rotation with unit scale, i.e. those for
/// which the two-term parameter-shift rule is exact.
std::vector<bool> parameter_shift_slots(const AnsatzTemplate& t);

/// Removes adjacent identical CNOT pairs until none remain.
std::vector<Gate> cancel_adjacent_cnots(std::vector<Gate> gates);

/// Hermitian generators G_k (tapered if requested) such that the k-th
/// cluster factor is exp(-i theta_k G_k). Singles before doubles.
std::vector<PauliSum> uccsd_generators(const UccsdContext& ctx);

}  // namespace qreact
