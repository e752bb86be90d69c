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

#include "qreact/error.hpp"
#include "qreact/fermion.hpp"

#include <cmath>

namespace qreact {

namespace {

// Accumulates coeff * product into `out` after normal ordering with the
// canonical anticommutation relations.
void normal_order_into(LadderProduct prod, cplx coeff,
                       std::map<LadderProduct, cplx>& out) {
  for (std::size_t i = 1; i < prod.size(); ++i) {
    for (std::size_t j = i; j > 0; --j) {
      const Ladder left = prod[j - 1];
      const Ladder right = prod[j];
      if (right.creation && !left.creation) {
        if (left.mode == right.mode) {
          // a_k a+_k = 1 - a+_k a_k
          LadderProduct contracted;
          contracted.reserve(prod.size() - 2);
          for (std::size_t k = 0; k < prod.size(); ++k)
            if (k != j - 1 && k != j) contracted.push_back(prod[k]);
          normal_order_into(std::move(contracted), coeff, out);
        }
        std::swap(prod[j - 1], prod[j]);
        coeff = -coeff;
      } else if (right.creation == left.creation) {
        if (right.mode == left.mode) return;  // a_k a_k = 0
        if (right.mode > left.mode) {
          std::swap(prod[j - 1], prod[j]);
          coeff = -coeff;
        } else {
          break;
        }
      } else {
        break;
      }
    }
  }
  out[prod] += coeff;
}

void check_mode(int mode, int n) {
  if (mode < 0 || mode >= n)
    throw DimensionError("mode " + std::to_string(mode) + " outside [0, " +
                         std::to_string(n) + ")");
}

// Image of a single ladder operator.
PauliSum ladder_image(int n, int p, bool creation, Mapping mapping) {
  PauliString xs(n), ys(n);
  xs.set(p, Pauli::X);
  ys.set(p, Pauli::Y);
  if (mapping == Mapping::JordanWigner) {
    for (int k = 0; k < p; ++k) {
      xs.set(k, Pauli::Z);
      ys.set(k, Pauli::Z);
    }
  } else {
    if (p > 0) xs.set(p - 1, Pauli::Z);
    for (int k = p + 1; k < n; ++k) {
      xs.set(k, Pauli::X);
      ys.set(k, Pauli::X);
    }
  }
  PauliSum s(n);
  s.add(xs, 0.5);
  s.add(ys, creation ? cplx(0, -0.5) : cplx(0, 0.5));
  return s;
}

}  // namespace

FermionOperator FermionOperator::identity(int num_modes, cplx coeff) {
  FermionOperator f(num_modes);
  f.add({}, coeff);
  return f;
}

FermionOperator FermionOperator::hopping(int num_modes, int p, int q,
                                         cplx coeff) {
  FermionOperator f(num_modes);
  f.add({{p, true}, {q, false}}, coeff);
  return f;
}

FermionOperator FermionOperator::number(int num_modes, int p) {
  return hopping(num_modes, p, p);
}

void FermionOperator::add(const LadderProduct& product, cplx coeff) {
  for (const auto& l : product) check_mode(l.mode, n_);
  normal_order_into(product, coeff, terms_);
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out(n_);
  for (const auto& [prod, c] : terms_) {
    LadderProduct rev(prod.rbegin(), prod.rend());
    for (auto& l : rev) l.creation = !l.creation;
    out.add(rev, std::conj(c));
  }
  return out;
}

void FermionOperator::prune(double tol) {
  std::erase_if(terms_,
                [tol](const auto& kv) { return std::abs(kv.second) < tol; });
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  if (o.n_ != n_) throw DimensionError("fermion operator mode mismatch");
  for (const auto& [p, c] : o.terms_) terms_[p] += c;
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  if (o.n_ != n_) throw DimensionError("fermion operator mode mismatch");
  for (const auto& [p, c] : o.terms_) terms_[p] -= c;
  return *this;
}

FermionOperator& FermionOperator::operator*=(cplx s) {
  for (auto& [p, c] : terms_) c *= s;
  return *this;
}

FermionOperator operator*(const FermionOperator& a, const FermionOperator& b) {
  if (a.n_ != b.n_) throw DimensionError("fermion operator mode mismatch");
  FermionOperator out(a.n_);
  for (const auto& [pa, ca] : a.terms_)
    for (const auto& [pb, cb] : b.terms_) {
      LadderProduct prod = pa;
      prod.insert(prod.end(), pb.begin(), pb.end());
      normal_order_into(std::move(prod), ca * cb, out.terms_);
    }
  return out;
}

FermionOperator build_hamiltonian(const Eigen::MatrixXd& h1,
                                  const TwoElectronIntegrals& g2,
                                  double core_energy) {
  const int m = static_cast<int>(h1.rows());
  if (h1.cols() != m || g2.norb() != m)
    throw DimensionError("one- and two-electron integrals disagree in size");
  const int n = 2 * m;
  FermionOperator h = FermionOperator::identity(n, core_energy);
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < m; ++p)
      for (int q = 0; q < m; ++q)
        if (h1(p, q) != 0.0)
          h.add({{p + sigma * m, true}, {q + sigma * m, false}}, h1(p, q));

  for (int sigma = 0; sigma < 2; ++sigma)
    for (int tau = 0; tau < 2; ++tau)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
          for (int r = 0; r < m; ++r)
            for (int s = 0; s < m; ++s) {
              const double v = g2(p, r, q, s);
              if (v == 0.0) continue;
              const int ps = p + sigma * m, qt = q + tau * m;
              const int st = s + tau * m, rs = r + sigma * m;
              if (ps == qt || st == rs) continue;
              h.add({{ps, true}, {qt, true}, {st, false}, {rs, false}},
                    0.5 * v);
            }
  h.prune(0.0);
  return h;
}

FermionOperator build_hamiltonian(const ActiveIntegrals& a) {
  return build_hamiltonian(a.h1, a.g2, a.core_energy);
}

std::string to_string(Mapping m) {
  return m == Mapping::JordanWigner ? "jordan-wigner" : "parity";
}

Mapping parse_mapping(std::string_view s) {
  if (s == "jordan-wigner" || s == "jw") return Mapping::JordanWigner;
  if (s == "parity") return Mapping::Parity;
  throw ValidationError("unknown mapping '" + std::string(s) + "'");
}

PauliSum map_to_qubits(const FermionOperator& f, Mapping mapping) {
  const int n = f.num_modes();
  std::vector<PauliSum> create, annihilate;
  for (int p = 0; p < n; ++p) {
    create.push_back(ladder_image(n, p, true, mapping));
    annihilate.push_back(ladder_image(n, p, false, mapping));
  }
  PauliSum out(n);
  for (const auto& [prod, c] : f.terms()) {
    PauliSum term = PauliSum::identity(n, c);
    for (const auto& l : prod)
      term = term * (l.creation ? create[l.mode] : annihilate[l.mode]);
    out += term;
  }
  out.prune();
  return out;
}

QubitHamiltonian map_hamiltonian(const FermionOperator& f, Mapping mapping) {
  return to_hamiltonian(map_to_qubits(f, mapping));
}

QubitHamiltonian jordan_wigner(const FermionOperator& f) {
  return map_hamiltonian(f, Mapping::JordanWigner);
}

QubitHamiltonian parity_transform(const FermionOperator& f) {
  return map_hamiltonian(f, Mapping::Parity);
}

std::pair<int, int> tapered_qubits(int n_spin_orbitals) {
  if (n_spin_orbitals < 2 || n_spin_orbitals % 2 != 0)
    throw ValidationError("two-qubit reduction needs an even number (>= 2) "
                          "of spin orbitals, got " +
                          std::to_string(n_spin_orbitals));
  return {n_spin_orbitals / 2 - 1, n_spin_orbitals - 1};
}

namespace {

struct TaperedString {
  PauliString string;
  double sign;
};

// Removes qubits a < b after substituting their Z eigenvalues.
// Residual X/Y weight at or below 1e-10 is dropped.
std::optional<TaperedString> taper_string(const PauliString& p, int a, int b,
                                          double za, double zb, double weight) {
  const std::uint64_t bits = (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
  if ((p.x_mask() & bits) != 0) {
    if (weight > 1e-10)
      throw SymmetryViolationError("term " + p.str() +
                                   " carries X/Y on a tapered qubit");
    return std::nullopt;
  }
  double sign = 1.0;
  if ((p.z_mask() >> a) & 1) sign *= za;
  if ((p.z_mask() >> b) & 1) sign *= zb;
  auto squeeze = [&](std::uint64_t m) {
    std::uint64_t out = 0;
    int k = 0;
    for (int q = 0; q < p.num_qubits(); ++q) {
      if (q == a || q == b) continue;
      if ((m >> q) & 1) out |= std::uint64_t{1} << k;
      ++k;
    }
    return out;
  };
  return TaperedString{PauliString(p.num_qubits() - 2, squeeze(p.x_mask()),
                                   squeeze(p.z_mask())),
                       sign};
}

}  // namespace

QubitHamiltonian taper_two_qubits(const QubitHamiltonian& h, int n_alpha,
                                  int n_beta) {
  const auto [a, b] = tapered_qubits(h.num_qubits());
  const double za = (n_alpha % 2 == 0) ? 1.0 : -1.0;
  const double zb = ((n_alpha + n_beta) % 2 == 0) ? 1.0 : -1.0;
  const QubitHamiltonian s = simplify(h);
  QubitHamiltonian out(h.num_qubits() - 2, s.constant());
  for (const auto& t : s.terms()) {
    const auto r = taper_string(t.pauli, a, b, za, zb, std::abs(t.coeff));
    if (r) out.add_term(r->string, r->sign * t.coeff);
  }
  return simplify(out);
}

PauliSum taper_two_qubits(const PauliSum& s, int n_alpha, int n_beta) {
  const auto [a, b] = tapered_qubits(s.num_qubits());
  const double za = (n_alpha % 2 == 0) ? 1.0 : -1.0;
  const double zb = ((n_alpha + n_beta) % 2 == 0) ? 1.0 : -1.0;
  PauliSum out(s.num_qubits() - 2);
  for (const auto& [p, c] : s.terms()) {
    const auto r = taper_string(p, a, b, za, zb, std::abs(c));
    if (r) out.add(r->string, r->sign * c);
  }
  out.prune();
  return out;
}

FermionSymmetries fermion_symmetries(int n_spin_orbitals) {
  if (n_spin_orbitals % 2 != 0)
    throw ValidationError("block spin ordering needs an even mode count");
  const int n = n_spin_orbitals;
  const int m = n / 2;
  FermionSymmetries s{FermionOperator(n), FermionOperator(n),
                      FermionOperator(n)};
  FermionOperator s_plus(n), s_minus(n);
  for (int p = 0; p < m; ++p) {
    s.number += FermionOperator::number(n, p) + FermionOperator::number(n, p + m);
    s.sz += (FermionOperator::number(n, p) - FermionOperator::number(n, p + m)) *
            0.5;
    s_plus += FermionOperator::hopping(n, p, p + m);
    s_minus += FermionOperator::hopping(n, p + m, p);
  }
  // S^2 = S+ S- + Sz^2 - Sz
  s.s2 = s_plus * s_minus + s.sz * s.sz - s.sz;
  s.s2.prune();
  return s;
}

SymmetryOperators symmetry_operators(int n_spin_orbitals, Mapping mapping,
                                     std::optional<TaperSector> taper) {
  if (taper && mapping != Mapping::Parity)
    throw ValidationError("two-qubit reduction requires the parity mapping");
  const auto f = fermion_symmetries(n_spin_orbitals);
  SymmetryOperators out{map_hamiltonian(f.number, mapping),
                        map_hamiltonian(f.sz, mapping),
                        map_hamiltonian(f.s2, mapping)};
  if (taper) {
    out.number = taper_two_qubits(out.number, taper->n_alpha, taper->n_beta);
    out.sz = taper_two_qubits(out.sz, taper->n_alpha, taper->n_beta);
    out.s2 = taper_two_qubits(out.s2, taper->n_alpha, taper->n_beta);
  }
  return out;
}

MappedHamiltonian map_integrals(const MolecularIntegrals& m,
                                const ActiveSpace& active, Mapping mapping,
                                bool taper) {
  if (taper && mapping != Mapping::Parity)
    throw ValidationError("two-qubit reduction requires the parity mapping");
  const ActiveIntegrals a = reduce_active_space(m, active);
  MappedHamiltonian out;
  out.mapping = mapping;
  out.tapered = taper;
  out.n_spin_orbitals = 2 * a.norb();
  out.n_alpha = a.n_alpha;
  out.n_beta = a.n_beta;
  out.hamiltonian = map_hamiltonian(build_hamiltonian(a), mapping);
  if (taper)
    out.hamiltonian = taper_two_qubits(out.hamiltonian, a.n_alpha, a.n_beta);
  return out;
}

}  // namespace qreact
