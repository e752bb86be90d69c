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

// Molecular integrals, active-space reduction, the second-quantized
// electronic Hamiltonian and its Jordan-Wigner / parity images.
//
// Spin orbitals use block order: for m spatial orbitals, modes 0..m-1 are
// the alpha copies in active order and m..2m-1 the beta copies.

#include "qreact/pauli.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qreact {

/// Dense rank-4 tensor of chemists'-notation integrals (pq|rs).
class TwoElectronIntegrals {
 public:
  TwoElectronIntegrals() = default;
  explicit TwoElectronIntegrals(int norb);

  int norb() const noexcept { return n_; }
  double operator()(int p, int q, int r, int s) const {
    return data_[index(p, q, r, s)];
  }
  double& operator()(int p, int q, int r, int s) {
    return data_[index(p, q, r, s)];
  }
  /// Writes v into all eight permutation images of (pq|rs).
  void set_symmetric(int p, int q, int r, int s, double v);

  friend bool operator==(const TwoElectronIntegrals&,
                         const TwoElectronIntegrals&) = default;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(p) * n + q) * n + r) * n + s;
  }
  int n_ = 0;
  std::vector<double> data_;
};

struct MolecularIntegrals {
  int norb = 0;
  int nelec = 0;
  int ms2 = 0;
  double e_nuc = 0.0;
  Eigen::MatrixXd h1;
  TwoElectronIntegrals g2;

  /// Checks h1/g2 symmetry (1e-10) and the electron count.
  void validate() const;

  friend bool operator==(const MolecularIntegrals&,
                         const MolecularIntegrals&) = default;
};

MolecularIntegrals parse_fcidump(std::istream& in);
MolecularIntegrals parse_fcidump_text(std::string_view text);
MolecularIntegrals read_fcidump(const std::string& path);

/// Writes the unique (i>=j, k>=l, ij>=kl) nonzero entries in "%.16e i j k l"
/// form, which round-trips every double exactly.
void write_fcidump(std::ostream& out, const MolecularIntegrals& m);

struct ActiveSpace {
  std::vector<int> frozen;
  std::vector<int> active;
  int n_alpha = 0;
  int n_beta = 0;

  /// Derives the active alpha/beta counts from nelec and ms2.
  static ActiveSpace from_integrals(const MolecularIntegrals& m,
                                    std::vector<int> frozen,
                                    std::vector<int> active);
};

/// Effective integrals over the active orbitals plus the frozen-core energy.
struct ActiveIntegrals {
  Eigen::MatrixXd h1;
  TwoElectronIntegrals g2;
  double core_energy = 0.0;
  int n_alpha = 0;
  int n_beta = 0;

  int norb() const { return static_cast<int>(h1.rows()); }
};

ActiveIntegrals reduce_active_space(const MolecularIntegrals& m,
                                    const ActiveSpace& a);

struct Ladder {
  int mode = 0;
  bool creation = false;

  friend auto operator<=>(const Ladder&, const Ladder&) = default;
};

using LadderProduct = std::vector<Ladder>;

/// Sum of normal-ordered ladder-operator products. Canonical order puts
/// creations before annihilations, each block in descending mode index.
class FermionOperator {
 public:
  FermionOperator() = default;
  explicit FermionOperator(int num_modes) : n_(num_modes) {}

  static FermionOperator identity(int num_modes, cplx coeff = 1.0);
  /// coeff * a^dagger_p a_q
  static FermionOperator hopping(int num_modes, int p, int q, cplx coeff = 1.0);
  static FermionOperator number(int num_modes, int p);

  int num_modes() const noexcept { return n_; }
  const std::map<LadderProduct, cplx>& terms() const noexcept {
    return terms_;
  }

  /// Normal-orders `product` and accumulates it.
  void add(const LadderProduct& product, cplx coeff);

  FermionOperator adjoint() const;
  void prune(double tol = kDefaultSimplifyTolerance);

  FermionOperator& operator+=(const FermionOperator& o);
  FermionOperator& operator-=(const FermionOperator& o);
  FermionOperator& operator*=(cplx s);
  friend FermionOperator operator*(const FermionOperator& a,
                                   const FermionOperator& b);
  friend FermionOperator operator+(FermionOperator a, const FermionOperator& b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a, const FermionOperator& b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, cplx s) { return a *= s; }

 private:
  int n_ = 0;
  std::map<LadderProduct, cplx> terms_;
};

FermionOperator build_hamiltonian(const Eigen::MatrixXd& h1,
                                  const TwoElectronIntegrals& g2,
                                  double core_energy);
FermionOperator build_hamiltonian(const ActiveIntegrals& a);

enum class Mapping { JordanWigner, Parity };

std::string to_string(Mapping m);
Mapping parse_mapping(std::string_view s);

/// Qubit image of an arbitrary (not necessarily Hermitian) operator.
PauliSum map_to_qubits(const FermionOperator& f, Mapping mapping);

QubitHamiltonian jordan_wigner(const FermionOperator& f);
QubitHamiltonian parity_transform(const FermionOperator& f);
QubitHamiltonian map_hamiltonian(const FermionOperator& f, Mapping mapping);

/// Qubits removed by the two-qubit reduction for n spin orbitals.
std::pair<int, int> tapered_qubits(int n_spin_orbitals);

/// Replaces Z on qubits n/2-1 and n-1 of a block-ordered parity operator by
/// (-1)^n_alpha and (-1)^(n_alpha+n_beta) and removes both qubits.
QubitHamiltonian taper_two_qubits(const QubitHamiltonian& h, int n_alpha,
                                  int n_beta);
PauliSum taper_two_qubits(const PauliSum& s, int n_alpha, int n_beta);

struct TaperSector {
  int n_alpha = 0;
  int n_beta = 0;
};

/// Fermionic N, S_z and S^2 on block-ordered spin orbitals.
struct FermionSymmetries {
  FermionOperator number;
  FermionOperator sz;
  FermionOperator s2;
};
FermionSymmetries fermion_symmetries(int n_spin_orbitals);

struct SymmetryOperators {
  QubitHamiltonian number;
  QubitHamiltonian sz;
  QubitHamiltonian s2;
};

/// Qubit images of N, S_z and S^2 under the same pipeline as the Hamiltonian.
/// Tapering requires Mapping::Parity.
SymmetryOperators symmetry_operators(int n_spin_orbitals, Mapping mapping,
                                     std::optional<TaperSector> taper = {});

/// Qubit Hamiltonian together with the fermionic context that produced it.
struct MappedHamiltonian {
  QubitHamiltonian hamiltonian;
  Mapping mapping = Mapping::JordanWigner;
  bool tapered = false;
  int n_spin_orbitals = 0;
  int n_alpha = 0;
  int n_beta = 0;
};

/// Active-space reduction, second quantization, qubit mapping, and the
/// optional two-qubit reduction (parity mapping only).
MappedHamiltonian map_integrals(const MolecularIntegrals& m,
                                const ActiveSpace& active, Mapping mapping,
                                bool taper);

}  // namespace qreact
