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

// Pauli strings, real-weighted Pauli sums and their dense / matrix-free
// realizations. Qubit k is character k of a string and bit k of a
// computational-basis index.

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qreact {

using cplx = std::complex<double>;

inline constexpr double kDefaultSimplifyTolerance = 1e-12;
inline constexpr int kDefaultDenseCap = 14;
inline constexpr int kMaxPauliWidth = 64;

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char to_char(Pauli p);

/// Phase-free tensor product of single-qubit Paulis, stored as x/z bit masks
/// (X: x, Z: z, Y: x and z).
class PauliString {
 public:
  PauliString() = default;
  /// All-identity string on `num_qubits` qubits.
  explicit PauliString(int num_qubits);
  PauliString(int num_qubits, std::uint64_t x_mask, std::uint64_t z_mask);

  /// Parses a string over {I, X, Y, Z}; throws ValidationError otherwise.
  static PauliString parse(std::string_view letters);

  int num_qubits() const noexcept { return n_; }
  std::uint64_t x_mask() const noexcept { return x_; }
  std::uint64_t z_mask() const noexcept { return z_; }
  std::uint64_t support() const noexcept { return x_ | z_; }

  Pauli operator[](int qubit) const;
  void set(int qubit, Pauli p);

  bool is_identity() const noexcept { return (x_ | z_) == 0; }
  int weight() const noexcept;
  /// Number of Y letters.
  int y_count() const noexcept;
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;
  /// Lexicographic over qubits 0..n-1 with I < X < Y < Z.
  friend std::strong_ordering operator<=>(const PauliString& a,
                                          const PauliString& b);

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Result of multiplying two Pauli strings: i^phase_power * string.
struct PauliProduct {
  int phase_power = 0;  // 0..3
  PauliString string;

  cplx phase() const;
};

PauliProduct mul(const PauliString& p, const PauliString& q);

/// True when on every qubit the letters agree or one of them is I.
bool qubitwise_commute(const PauliString& p, const PauliString& q);

/// True when the two strings commute as operators.
bool commute(const PauliString& p, const PauliString& q);

struct PauliTerm {
  PauliString pauli;
  double coeff = 0.0;

  friend bool operator==(const PauliTerm&, const PauliTerm&) = default;
};

/// Real-weighted sum of Pauli strings plus an identity constant (hartree).
/// Terms are stored as added; simplify() produces the canonical form.
class QubitHamiltonian {
 public:
  QubitHamiltonian() = default;
  explicit QubitHamiltonian(int num_qubits, double constant = 0.0);

  int num_qubits() const noexcept { return n_; }
  double constant() const noexcept { return constant_; }
  void set_constant(double c) noexcept { constant_ = c; }
  const std::vector<PauliTerm>& terms() const noexcept { return terms_; }

  void add_term(const PauliString& p, double coeff);
  void add_term(std::string_view letters, double coeff);

  friend bool operator==(const QubitHamiltonian&,
                         const QubitHamiltonian&) = default;

 private:
  int n_ = 0;
  double constant_ = 0.0;
  std::vector<PauliTerm> terms_;
};

/// Combines like terms, folds the all-identity weight into the constant and
/// drops |coeff| < tol. Output terms are sorted.
QubitHamiltonian simplify(const QubitHamiltonian& h,
                          double tol = kDefaultSimplifyTolerance);

/// Complex-weighted Pauli sum used while mapping fermionic operators. The
/// identity is kept as an ordinary key.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int num_qubits) : n_(num_qubits) {}

  static PauliSum identity(int num_qubits, cplx coeff = 1.0);
  static PauliSum term(const PauliString& p, cplx coeff = 1.0);

  int num_qubits() const noexcept { return n_; }
  const std::map<PauliString, cplx>& terms() const noexcept { return terms_; }

  void add(const PauliString& p, cplx coeff);
  PauliSum& operator+=(const PauliSum& o);
  PauliSum& operator*=(cplx s);
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b);
  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }

  /// Removes entries with |coeff| < tol.
  void prune(double tol = kDefaultSimplifyTolerance);

 private:
  int n_ = 0;
  std::map<PauliString, cplx> terms_;
};

/// Converts to a real Hamiltonian; throws HermiticityError if any
/// coefficient keeps an imaginary part above `imag_tol`.
QubitHamiltonian to_hamiltonian(const PauliSum& s, double imag_tol = 1e-10);

/// Dense 2^n x 2^n realization. Row/column index bit k is qubit k.
Eigen::MatrixXcd to_matrix(const QubitHamiltonian& h,
                           int dense_cap = kDefaultDenseCap);
Eigen::MatrixXcd to_matrix(const PauliString& p,
                           int dense_cap = kDefaultDenseCap);

/// P|psi> without forming a matrix.
Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& psi);
Eigen::VectorXcd apply(const QubitHamiltonian& h, const Eigen::VectorXcd& psi);

/// <psi|P|psi>, complex in general.
cplx pauli_expectation(const PauliString& p, const Eigen::VectorXcd& psi);

/// constant + sum_j c_j <psi|P_j|psi>; psi must be normalized within 1e-10.
double expectation(const QubitHamiltonian& h, const Eigen::VectorXcd& psi);

/// Tr(rho P) and Tr(rho H) for a density matrix.
cplx pauli_expectation(const PauliString& p, const Eigen::MatrixXcd& rho);
double density_expectation(const QubitHamiltonian& h,
                           const Eigen::MatrixXcd& rho);

/// Greedy first-fit partition of the simplified terms into qubit-wise
/// commuting groups.
std::vector<std::vector<PauliTerm>> group_qubitwise_commuting(
    const QubitHamiltonian& h);

}  // namespace qreact
