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

// Dense exact diagonalization, the reference every VQE result is compared
// against.

#include "qreact/fermion.hpp"
#include "qreact/pauli.hpp"

#include <Eigen/Dense>

namespace qreact {

struct SpectrumResult {
  /// Ascending, constant included.
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXcd ground_state;
  double ground_energy = 0.0;
  /// ||H v0 - E0 v0||
  double residual = 0.0;
};

SpectrumResult ground_state(const QubitHamiltonian& h,
                            int dense_cap = kDefaultDenseCap);

/// Lowest eigenvalue of `h` restricted to the joint eigenspace of the
/// number and S_z operators with the requested eigenvalues.
double sector_ground(const QubitHamiltonian& h, double n_target,
                     double sz_target, const SymmetryOperators& symmetries,
                     int dense_cap = kDefaultDenseCap);

/// max |([A, B])_ij| of the dense realizations.
double commutator_norm(const QubitHamiltonian& a, const QubitHamiltonian& b,
                       int dense_cap = kDefaultDenseCap);

}  // namespace qreact
