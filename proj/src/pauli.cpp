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

#include "qreact/pauli.hpp"

#include "qreact/error.hpp"

#include <bit>
#include <cmath>

namespace qreact {

namespace {

constexpr cplx kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

int letter_code(bool x, bool z) { return x ? (z ? 2 : 1) : (z ? 3 : 0); }

std::uint64_t width_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void check_width(int n) {
  if (n < 0 || n > kMaxPauliWidth)
    throw ResourceLimitError("Pauli string width " + std::to_string(n) +
                             " outside [0, 64]");
}

void check_dense_cap(int n, int cap) {
  if (n > cap)
    throw ResourceLimitError("dense realization of " + std::to_string(n) +
                             " qubits exceeds cap " + std::to_string(cap));
}

// Phase acquired by P acting on basis state b: P|b> = phase * |b ^ x>.
inline cplx basis_phase(int y_power, std::uint64_t z, std::uint64_t b) {
  const int sign = std::popcount(b & z) & 1;
  return kIPowers[(y_power + 2 * sign) & 3];
}

void check_state(int n, Eigen::Index size) {
  if (n >= 63 || size != (Eigen::Index{1} << n))
    throw DimensionError("state dimension " + std::to_string(size) +
                         " does not match " + std::to_string(n) + " qubits");
}

}  // namespace

char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PauliString::PauliString(int num_qubits) : n_(num_qubits) {
  check_width(num_qubits);
}

PauliString::PauliString(int num_qubits, std::uint64_t x_mask,
                         std::uint64_t z_mask)
    : n_(num_qubits), x_(x_mask), z_(z_mask) {
  check_width(num_qubits);
  if (((x_ | z_) & ~width_mask(n_)) != 0)
    throw DimensionError("Pauli masks exceed string width");
}

PauliString PauliString::parse(std::string_view letters) {
  if (letters.empty()) throw ValidationError("empty Pauli string");
  PauliString p(static_cast<int>(letters.size()));
  for (int q = 0; q < p.n_; ++q) {
    switch (letters[q]) {
      case 'I': break;
      case 'X': p.set(q, Pauli::X); break;
      case 'Y': p.set(q, Pauli::Y); break;
      case 'Z': p.set(q, Pauli::Z); break;
      default:
        throw ValidationError("invalid Pauli letter '" +
                              std::string(1, letters[q]) + "' in \"" +
                              std::string(letters) + "\"");
    }
  }
  return p;
}

Pauli PauliString::operator[](int qubit) const {
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  return static_cast<Pauli>(letter_code(x, z));
}

void PauliString::set(int qubit, Pauli p) {
  if (qubit < 0 || qubit >= n_)
    throw DimensionError("qubit index " + std::to_string(qubit) +
                         " out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  if (p == Pauli::X || p == Pauli::Y) x_ |= bit;
  if (p == Pauli::Z || p == Pauli::Y) z_ |= bit;
}

int PauliString::weight() const noexcept { return std::popcount(x_ | z_); }

int PauliString::y_count() const noexcept { return std::popcount(x_ & z_); }

std::string PauliString::str() const {
  std::string s(static_cast<std::size_t>(n_), 'I');
  for (int q = 0; q < n_; ++q) s[q] = to_char((*this)[q]);
  return s;
}

std::strong_ordering operator<=>(const PauliString& a, const PauliString& b) {
  if (a.n_ != b.n_) return a.n_ <=> b.n_;
  const std::uint64_t diff = (a.x_ ^ b.x_) | (a.z_ ^ b.z_);
  if (diff == 0) return std::strong_ordering::equal;
  const int q = std::countr_zero(diff);
  return static_cast<int>(a[q]) <=> static_cast<int>(b[q]);
}

cplx PauliProduct::phase() const { return kIPowers[phase_power & 3]; }

PauliProduct mul(const PauliString& p, const PauliString& q) {
  if (p.num_qubits() != q.num_qubits())
    throw DimensionError("Pauli product of strings with widths " +
                         std::to_string(p.num_qubits()) + " and " +
                         std::to_string(q.num_qubits()));
  int power = 0;
  const std::uint64_t both = p.support() & q.support();
  for (std::uint64_t m = both; m != 0; m &= m - 1) {
    const int k = std::countr_zero(m);
    const int a = static_cast<int>(p[k]);
    const int b = static_cast<int>(q[k]);
    if (a == b) continue;
    // X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order gives -i.
    power += ((b - a + 3) % 3 == 1) ? 1 : 3;
  }
  return {power & 3, PauliString(p.num_qubits(), p.x_mask() ^ q.x_mask(),
                                 p.z_mask() ^ q.z_mask())};
}

bool qubitwise_commute(const PauliString& p, const PauliString& q) {
  const std::uint64_t overlap = p.support() & q.support();
  const std::uint64_t differ =
      (p.x_mask() ^ q.x_mask()) | (p.z_mask() ^ q.z_mask());
  return (overlap & differ) == 0;
}

bool commute(const PauliString& p, const PauliString& q) {
  const int sym = std::popcount(p.x_mask() & q.z_mask()) +
                  std::popcount(p.z_mask() & q.x_mask());
  return (sym & 1) == 0;
}

QubitHamiltonian::QubitHamiltonian(int num_qubits, double constant)
    : n_(num_qubits), constant_(constant) {
  check_width(num_qubits);
}

void QubitHamiltonian::add_term(const PauliString& p, double coeff) {
  if (p.num_qubits() != n_)
    throw DimensionError("term " + p.str() + " has width " +
                         std::to_string(p.num_qubits()) + ", Hamiltonian has " +
                         std::to_string(n_));
  terms_.push_back({p, coeff});
}

void QubitHamiltonian::add_term(std::string_view letters, double coeff) {
  add_term(PauliString::parse(letters), coeff);
}

QubitHamiltonian simplify(const QubitHamiltonian& h, double tol) {
  if (tol < 0) throw ValidationError("simplify tolerance must be >= 0");
  std::map<PauliString, double> acc;
  double constant = h.constant();
  for (const auto& t : h.terms()) {
    if (t.pauli.is_identity())
      constant += t.coeff;
    else
      acc[t.pauli] += t.coeff;
  }
  QubitHamiltonian out(h.num_qubits(), constant);
  for (const auto& [p, c] : acc)
    if (std::abs(c) >= tol) out.add_term(p, c);
  return out;
}

PauliSum PauliSum::identity(int num_qubits, cplx coeff) {
  PauliSum s(num_qubits);
  s.add(PauliString(num_qubits), coeff);
  return s;
}

PauliSum PauliSum::term(const PauliString& p, cplx coeff) {
  PauliSum s(p.num_qubits());
  s.add(p, coeff);
  return s;
}

void PauliSum::add(const PauliString& p, cplx coeff) {
  if (p.num_qubits() != n_) throw DimensionError("PauliSum width mismatch");
  terms_[p] += coeff;
}

PauliSum& PauliSum::operator+=(const PauliSum& o) {
  if (o.n_ != n_) throw DimensionError("PauliSum width mismatch");
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  return *this;
}

PauliSum& PauliSum::operator*=(cplx s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
  if (a.n_ != b.n_) throw DimensionError("PauliSum width mismatch");
  PauliSum out(a.n_);
  for (const auto& [p, cp] : a.terms_)
    for (const auto& [q, cq] : b.terms_) {
      const auto r = mul(p, q);
      out.terms_[r.string] += cp * cq * r.phase();
    }
  return out;
}

void PauliSum::prune(double tol) {
  std::erase_if(terms_, [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

QubitHamiltonian to_hamiltonian(const PauliSum& s, double imag_tol) {
  QubitHamiltonian h(s.num_qubits());
  for (const auto& [p, c] : s.terms()) {
    if (std::abs(c.imag()) > imag_tol)
      throw HermiticityError("term " + p.str() + " keeps imaginary weight " +
                             std::to_string(c.imag()));
    h.add_term(p, c.real());
  }
  return simplify(h);
}

Eigen::MatrixXcd to_matrix(const PauliString& p, int dense_cap) {
  check_dense_cap(p.num_qubits(), dense_cap);
  const std::uint64_t dim = std::uint64_t{1} << p.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  const int yp = p.y_count() & 3;
  for (std::uint64_t b = 0; b < dim; ++b)
    m(b ^ p.x_mask(), b) = basis_phase(yp, p.z_mask(), b);
  return m;
}

Eigen::MatrixXcd to_matrix(const QubitHamiltonian& h, int dense_cap) {
  check_dense_cap(h.num_qubits(), dense_cap);
  const std::uint64_t dim = std::uint64_t{1} << h.num_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m.diagonal().setConstant(h.constant());
  for (const auto& t : h.terms()) {
    const int yp = t.pauli.y_count() & 3;
    for (std::uint64_t b = 0; b < dim; ++b)
      m(b ^ t.pauli.x_mask(), b) +=
          t.coeff * basis_phase(yp, t.pauli.z_mask(), b);
  }
  return m;
}

Eigen::VectorXcd apply(const PauliString& p, const Eigen::VectorXcd& psi) {
  check_state(p.num_qubits(), psi.size());
  Eigen::VectorXcd out(psi.size());
  const int yp = p.y_count() & 3;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b)
    out(b ^ p.x_mask()) = basis_phase(yp, p.z_mask(), b) * psi(b);
  return out;
}

Eigen::VectorXcd apply(const QubitHamiltonian& h, const Eigen::VectorXcd& psi) {
  check_state(h.num_qubits(), psi.size());
  Eigen::VectorXcd out = h.constant() * psi;
  for (const auto& t : h.terms()) out += t.coeff * apply(t.pauli, psi);
  return out;
}

cplx pauli_expectation(const PauliString& p, const Eigen::VectorXcd& psi) {
  check_state(p.num_qubits(), psi.size());
  const int yp = p.y_count() & 3;
  cplx acc = 0;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(psi.size()); ++b)
    acc += std::conj(psi(b ^ p.x_mask())) * basis_phase(yp, p.z_mask(), b) *
           psi(b);
  return acc;
}

double expectation(const QubitHamiltonian& h, const Eigen::VectorXcd& psi) {
  check_state(h.num_qubits(), psi.size());
  if (std::abs(psi.norm() - 1.0) > 1e-10)
    throw ValidationError("state is not normalized (norm " +
                          std::to_string(psi.norm()) + ")");
  double e = h.constant();
  for (const auto& t : h.terms())
    e += t.coeff * pauli_expectation(t.pauli, psi).real();
  return e;
}

cplx pauli_expectation(const PauliString& p, const Eigen::MatrixXcd& rho) {
  check_state(p.num_qubits(), rho.rows());
  if (rho.cols() != rho.rows()) throw DimensionError("density matrix not square");
  const int yp = p.y_count() & 3;
  cplx acc = 0;
  for (std::uint64_t b = 0; b < static_cast<std::uint64_t>(rho.rows()); ++b)
    acc += rho(b, b ^ p.x_mask()) * basis_phase(yp, p.z_mask(), b);
  return acc;
}

double density_expectation(const QubitHamiltonian& h,
                           const Eigen::MatrixXcd& rho) {
  double e = h.constant() * rho.trace().real();
  for (const auto& t : h.terms())
    e += t.coeff * pauli_expectation(t.pauli, rho).real();
  return e;
}

std::vector<std::vector<PauliTerm>> group_qubitwise_commuting(
    const QubitHamiltonian& h) {
  std::vector<std::vector<PauliTerm>> groups;
  const QubitHamiltonian s = simplify(h);
  for (const auto& t : s.terms()) {
    bool placed = false;
    for (auto& g : groups) {
      bool fits = true;
      for (const auto& member : g)
        if (!qubitwise_commute(member.pauli, t.pauli)) {
          fits = false;
          break;
        }
      if (fits) {
        g.push_back(t);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({t});
  }
  return groups;
}

}  // namespace qreact
