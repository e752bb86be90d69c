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

#include "qreact/ansatz.hpp"

#include "qreact/error.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qreact {

std::string to_string(GateKind k) {
  switch (k) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::Rx: return "RX";
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::CNOT: return "CNOT";
  }
  return "?";
}

int Circuit::cnot_count() const {
  int n = 0;
  for (const auto& g : gates) n += g.kind == GateKind::CNOT;
  return n;
}

std::string Circuit::dump() const {
  std::string out;
  char buf[64];
  for (const auto& g : gates) {
    out += to_string(g.kind);
    out += ' ';
    out += std::to_string(g.qubit);
    if (g.kind == GateKind::CNOT) out += ',' + std::to_string(g.target);
    if (g.is_rotation()) {
      std::snprintf(buf, sizeof buf, ",theta=%.12f", g.theta);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(AnsatzKind k) {
  switch (k) {
    case AnsatzKind::Ry: return "ry";
    case AnsatzKind::RyRz: return "ryrz";
    case AnsatzKind::SwapRz: return "swaprz";
    case AnsatzKind::Uccsd: return "uccsd";
  }
  return "?";
}

AnsatzKind parse_ansatz_kind(std::string_view s) {
  if (s == "ry") return AnsatzKind::Ry;
  if (s == "ryrz") return AnsatzKind::RyRz;
  if (s == "swaprz") return AnsatzKind::SwapRz;
  if (s == "uccsd") return AnsatzKind::Uccsd;
  throw ValidationError("unknown ansatz '" + std::string(s) + "'");
}

int AnsatzTemplate::cnot_count() const {
  int n = 0;
  for (const auto& g : gates) n += g.kind == GateKind::CNOT;
  return n;
}

std::string hartree_fock_bits(int n_alpha, int n_beta, int n_spin_orbitals,
                              Mapping mapping, bool tapered) {
  if (n_spin_orbitals < 0 || n_spin_orbitals % 2 != 0)
    throw ValidationError("block ordering needs an even spin-orbital count");
  const int m = n_spin_orbitals / 2;
  if (n_alpha < 0 || n_beta < 0 || n_alpha > m || n_beta > m)
    throw ValidationError("electron count exceeds available spin orbitals");
  std::string occ(static_cast<std::size_t>(n_spin_orbitals), '0');
  for (int i = 0; i < n_alpha; ++i) occ[i] = '1';
  for (int i = 0; i < n_beta; ++i) occ[m + i] = '1';
  if (mapping == Mapping::JordanWigner) {
    if (tapered)
      throw ValidationError("two-qubit reduction requires the parity mapping");
    return occ;
  }
  std::string bits = occ;
  int parity = 0;
  for (int j = 0; j < n_spin_orbitals; ++j) {
    parity ^= occ[j] - '0';
    bits[j] = static_cast<char>('0' + parity);
  }
  if (!tapered) return bits;
  const auto [a, b] = tapered_qubits(n_spin_orbitals);
  std::string out;
  for (int j = 0; j < n_spin_orbitals; ++j)
    if (j != a && j != b) out += bits[j];
  return out;
}

namespace {

Gate single(GateKind k, int q) { return {k, q}; }
Gate cnot(int c, int t) { return {GateKind::CNOT, c, t}; }
Gate rotation(GateKind k, int q, int slot, double scale = 1.0) {
  return {k, q, -1, 0.0, slot, scale};
}

void rotation_layer(std::vector<Gate>& g, GateKind k, int n, int& slot) {
  for (int q = 0; q < n; ++q) g.push_back(rotation(k, q, slot++));
}

void cnot_chain(std::vector<Gate>& g, int n) {
  for (int q = 0; q + 1 < n; ++q) g.push_back(cnot(q, q + 1));
}

// exp(-i theta (XX + YY) / 2) on (q, q+1): the XX and YY factors commute and
// each is a basis-changed ZZ rotation with two CNOTs.
void excitation_block(std::vector<Gate>& g, int q, int slot) {
  const int r = q + 1;
  g.push_back(single(GateKind::H, q));
  g.push_back(single(GateKind::H, r));
  g.push_back(cnot(q, r));
  g.push_back(rotation(GateKind::Rz, r, slot));
  g.push_back(cnot(q, r));
  g.push_back(single(GateKind::H, q));
  g.push_back(single(GateKind::H, r));

  g.push_back(single(GateKind::Sdg, q));
  g.push_back(single(GateKind::Sdg, r));
  g.push_back(single(GateKind::H, q));
  g.push_back(single(GateKind::H, r));
  g.push_back(cnot(q, r));
  g.push_back(rotation(GateKind::Rz, r, slot));
  g.push_back(cnot(q, r));
  g.push_back(single(GateKind::H, q));
  g.push_back(single(GateKind::H, r));
  g.push_back(single(GateKind::S, q));
  g.push_back(single(GateKind::S, r));
}

// exp(-i theta * coeff * P) via basis change and a CNOT ladder.
void pauli_exponential(std::vector<Gate>& g, const PauliString& p,
                       double coeff, int slot) {
  std::vector<int> support;
  for (int q = 0; q < p.num_qubits(); ++q)
    if (p[q] != Pauli::I) support.push_back(q);
  if (support.empty()) return;  // global phase

  for (int q : support) {
    if (p[q] == Pauli::X) {
      g.push_back(single(GateKind::H, q));
    } else if (p[q] == Pauli::Y) {
      g.push_back(single(GateKind::Sdg, q));
      g.push_back(single(GateKind::H, q));
    }
  }
  for (std::size_t i = 0; i + 1 < support.size(); ++i)
    g.push_back(cnot(support[i], support[i + 1]));
  g.push_back(rotation(GateKind::Rz, support.back(), slot, 2.0 * coeff));
  for (std::size_t i = support.size() - 1; i > 0; --i)
    g.push_back(cnot(support[i - 1], support[i]));
  for (int q : support) {
    if (p[q] == Pauli::X) {
      g.push_back(single(GateKind::H, q));
    } else if (p[q] == Pauli::Y) {
      g.push_back(single(GateKind::H, q));
      g.push_back(single(GateKind::S, q));
    }
  }
}

bool touches(const Gate& g, int q) {
  return g.qubit == q || (g.kind == GateKind::CNOT && g.target == q);
}

void validate_uccsd_context(const UccsdContext& c) {
  if (c.n_spatial < 1) throw ValidationError("UCCSD needs at least one orbital");
  if (c.n_alpha < 0 || c.n_beta < 0 || c.n_alpha > c.n_spatial ||
      c.n_beta > c.n_spatial)
    throw ValidationError("UCCSD electron counts exceed orbitals");
  if (c.tapered && c.mapping != Mapping::Parity)
    throw ValidationError("two-qubit reduction requires the parity mapping");
}

}  // namespace

std::vector<Gate> cancel_adjacent_cnots(std::vector<Gate> gates) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < gates.size() && !changed; ++i) {
      if (gates[i].kind != GateKind::CNOT) continue;
      const int c = gates[i].qubit, t = gates[i].target;
      for (std::size_t j = i + 1; j < gates.size(); ++j) {
        if (!touches(gates[j], c) && !touches(gates[j], t)) continue;
        if (gates[j].kind == GateKind::CNOT && gates[j].qubit == c &&
            gates[j].target == t) {
          gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(j));
          gates.erase(gates.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
        }
        break;
      }
    }
  }
  return gates;
}

std::vector<PauliSum> uccsd_generators(const UccsdContext& ctx) {
  validate_uccsd_context(ctx);
  const int m = ctx.n_spatial;
  const int n = 2 * m;
  std::vector<FermionOperator> cluster;

  auto single_exc = [&](int i, int a) {
    FermionOperator t(n);
    t.add({{a, true}, {i, false}}, 1.0);
    cluster.push_back(t);
  };
  auto double_exc = [&](int i, int j, int a, int b) {
    FermionOperator t(n);
    t.add({{a, true}, {b, true}, {j, false}, {i, false}}, 1.0);
    cluster.push_back(t);
  };

  const int na = ctx.n_alpha, nb = ctx.n_beta;
  for (int i = 0; i < na; ++i)
    for (int a = na; a < m; ++a) single_exc(i, a);
  for (int i = 0; i < nb; ++i)
    for (int a = nb; a < m; ++a) single_exc(m + i, m + a);

  for (int i = 0; i < na; ++i)
    for (int j = i + 1; j < na; ++j)
      for (int a = na; a < m; ++a)
        for (int b = a + 1; b < m; ++b) double_exc(i, j, a, b);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int a = na; a < m; ++a)
        for (int b = nb; b < m; ++b) double_exc(i, m + j, a, m + b);
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j)
      for (int a = nb; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
          double_exc(m + i, m + j, m + a, m + b);

  std::vector<PauliSum> out;
  for (const auto& t : cluster) {
    // G = i (T - T^dagger) is Hermitian and exp(theta (T - T^dagger)) =
    // exp(-i theta G).
    FermionOperator g = (t - t.adjoint()) * cplx(0, 1);
    PauliSum s = map_to_qubits(g, ctx.mapping);
    if (ctx.tapered) s = taper_two_qubits(s, na, nb);
    for (const auto& [p, c] : s.terms())
      if (std::abs(c.imag()) > 1e-10)
        throw HermiticityError("cluster generator is not Hermitian");
    out.push_back(std::move(s));
  }
  return out;
}

AnsatzTemplate build_ansatz(AnsatzKind kind, int num_qubits, int depth,
                            std::string_view hf_bits,
                            const std::optional<UccsdContext>& uccsd) {
  if (num_qubits < 1) throw ValidationError("ansatz needs at least one qubit");
  if (depth < 1) throw ValidationError("ansatz depth must be >= 1");
  if (static_cast<int>(hf_bits.size()) != num_qubits)
    throw DimensionError("initial bitstring length " +
                         std::to_string(hf_bits.size()) + " != " +
                         std::to_string(num_qubits) + " qubits");

  AnsatzTemplate t;
  t.kind = kind;
  t.num_qubits = num_qubits;
  t.depth = depth;
  t.hf_bits = std::string(hf_bits);
  auto& g = t.gates;
  std::vector<bool> prefix(static_cast<std::size_t>(num_qubits));
  for (int q = 0; q < num_qubits; ++q) {
    if (hf_bits[q] != '0' && hf_bits[q] != '1')
      throw ValidationError("initial bitstring must contain only 0/1");
    prefix[static_cast<std::size_t>(q)] = hf_bits[q] == '1';
  }
  // Ry/RyRz: prepare the preimage of the reference under the d CNOT chains,
  // so that zero angles return the reference determinant.
  if (kind == AnsatzKind::Ry || kind == AnsatzKind::RyRz)
    for (int d = 0; d < depth; ++d)
      for (int q = num_qubits - 2; q >= 0; --q)
        if (prefix[static_cast<std::size_t>(q)])
          prefix[static_cast<std::size_t>(q) + 1] =
              !prefix[static_cast<std::size_t>(q) + 1];
  for (int q = 0; q < num_qubits; ++q)
    if (prefix[static_cast<std::size_t>(q)]) g.push_back(single(GateKind::X, q));

  int slot = 0;
  const int n = num_qubits;
  switch (kind) {
    case AnsatzKind::Ry:
      rotation_layer(g, GateKind::Ry, n, slot);
      for (int d = 0; d < depth; ++d) {
        cnot_chain(g, n);
        rotation_layer(g, GateKind::Ry, n, slot);
      }
      break;
    case AnsatzKind::RyRz:
      rotation_layer(g, GateKind::Ry, n, slot);
      rotation_layer(g, GateKind::Rz, n, slot);
      for (int d = 0; d < depth; ++d) {
        cnot_chain(g, n);
        rotation_layer(g, GateKind::Ry, n, slot);
        rotation_layer(g, GateKind::Rz, n, slot);
      }
      break;
    case AnsatzKind::SwapRz:
      rotation_layer(g, GateKind::Rz, n, slot);
      for (int d = 0; d < depth; ++d) {
        for (int q = 0; q + 1 < n; ++q) excitation_block(g, q, slot++);
        rotation_layer(g, GateKind::Rz, n, slot);
      }
      break;
    case AnsatzKind::Uccsd: {
      const UccsdContext ctx = uccsd.value_or(UccsdContext{});
      if (ctx.num_qubits() != n)
        throw DimensionError("UCCSD context implies " +
                             std::to_string(ctx.num_qubits()) +
                             " qubits, template has " + std::to_string(n));
      const auto generators = uccsd_generators(ctx);
      for (int d = 0; d < depth; ++d)
        for (const auto& gen : generators) {
          for (const auto& [p, c] : gen.terms())
            pauli_exponential(g, p, c.real(), slot);
          ++slot;
        }
      g = cancel_adjacent_cnots(std::move(g));
      break;
    }
  }
  t.num_parameters = slot;
  return t;
}

ResourceCounts resource_counts(AnsatzKind kind, int n, int d,
                               const std::optional<UccsdContext>& uccsd) {
  if (n < 1) throw ValidationError("ansatz needs at least one qubit");
  if (d < 1) throw ValidationError("ansatz depth must be >= 1");
  switch (kind) {
    case AnsatzKind::Ry: return {d * (n - 1), n * (d + 1)};
    case AnsatzKind::RyRz: return {d * (n - 1), 2 * n * (d + 1)};
    case AnsatzKind::SwapRz: return {4 * d * (n - 1), n + d * (2 * n - 1)};
    case AnsatzKind::Uccsd: {
      const auto t =
          build_ansatz(kind, n, d, std::string(static_cast<std::size_t>(n), '0'),
                       uccsd);
      return {t.cnot_count(), t.num_parameters};
    }
  }
  return {};
}

Circuit bind_parameters(const AnsatzTemplate& t,
                        const std::vector<double>& theta) {
  if (static_cast<int>(theta.size()) != t.num_parameters)
    throw DimensionError("parameter vector has " +
                         std::to_string(theta.size()) + " entries, template needs " +
                         std::to_string(t.num_parameters));
  Circuit c{t.num_qubits, t.gates};
  for (auto& g : c.gates) {
    if (g.slot >= 0) {
      g.theta = g.scale * theta[static_cast<std::size_t>(g.slot)];
      g.slot = -1;
      g.scale = 1.0;
    }
  }
  return c;
}

std::vector<bool> parameter_shift_slots(const AnsatzTemplate& t) {
  std::vector<int> uses(static_cast<std::size_t>(t.num_parameters), 0);
  std::vector<bool> unit(static_cast<std::size_t>(t.num_parameters), true);
  for (const auto& g : t.gates) {
    if (g.slot < 0) continue;
    ++uses[g.slot];
    if (!g.is_rotation() || g.scale != 1.0) unit[g.slot] = false;
  }
  std::vector<bool> ok(uses.size());
  for (std::size_t k = 0; k < uses.size(); ++k) ok[k] = uses[k] == 1 && unit[k];
  return ok;
}

}  // namespace qreact
