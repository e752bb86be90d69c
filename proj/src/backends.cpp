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

#include "qreact/backends.hpp"

#include "qreact/error.hpp"
#include "qreact/rng.hpp"

#include <algorithm>
#include <complex>
#include <sstream>

namespace qreact {

namespace {

using Eigen::Index;

void check_gate(const Gate& g, int width) {
  if (g.qubit < 0 || g.qubit >= width)
    throw DimensionError("gate qubit " + std::to_string(g.qubit) +
                         " outside circuit width " + std::to_string(width));
  if (g.kind != GateKind::CNOT) return;
  if (g.target < 0 || g.target >= width)
    throw DimensionError("CNOT target " + std::to_string(g.target) +
                         " outside circuit width " + std::to_string(width));
  if (g.target == g.qubit)
    throw ValidationError("CNOT control and target coincide");
}

int width_of(Index dim) {
  int n = 0;
  while ((Index{1} << n) < dim) ++n;
  if ((Index{1} << n) != dim)
    throw DimensionError("dimension is not a power of two");
  return n;
}

}  // namespace

Eigen::Matrix2cd gate_matrix(const Gate& g) {
  const cplx i(0, 1);
  const double h = 0.5 * g.theta;
  const double r = 1.0 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, i; break;
    case GateKind::Sdg: m << 1, 0, 0, -i; break;
    case GateKind::Rx:
      m << std::cos(h), -i * std::sin(h), -i * std::sin(h), std::cos(h);
      break;
    case GateKind::Ry: m << std::cos(h), -std::sin(h), std::sin(h), std::cos(h); break;
    case GateKind::Rz: m << std::exp(-i * h), 0, 0, std::exp(i * h); break;
    case GateKind::CNOT:
      throw ValidationError("CNOT has no single-qubit matrix");
  }
  return m;
}

void apply_gate(Statevector& psi, const Gate& g) {
  const Index dim = psi.size();
  if (g.kind == GateKind::CNOT) {
    const Index c = Index{1} << g.qubit;
    const Index t = Index{1} << g.target;
    for (Index b = 0; b < dim; ++b)
      if ((b & c) && !(b & t)) std::swap(psi(b), psi(b | t));
    return;
  }
  const Eigen::Matrix2cd u = gate_matrix(g);
  const Index s = Index{1} << g.qubit;
  for (Index b = 0; b < dim; ++b) {
    if (b & s) continue;
    const cplx a0 = psi(b), a1 = psi(b | s);
    psi(b) = u(0, 0) * a0 + u(0, 1) * a1;
    psi(b | s) = u(1, 0) * a0 + u(1, 1) * a1;
  }
}

void apply_gate(DensityMatrix& rho, const Gate& g) {
  const Index dim = rho.rows();
  if (g.kind == GateKind::CNOT) {
    const Index c = Index{1} << g.qubit;
    const Index t = Index{1} << g.target;
    for (Index b = 0; b < dim; ++b)
      if ((b & c) && !(b & t)) {
        rho.row(b).swap(rho.row(b | t));
      }
    for (Index b = 0; b < dim; ++b)
      if ((b & c) && !(b & t)) {
        rho.col(b).swap(rho.col(b | t));
      }
    return;
  }
  const Eigen::Matrix2cd u = gate_matrix(g);
  const Index s = Index{1} << g.qubit;
  // U rho
  for (Index j = 0; j < dim; ++j)
    for (Index b = 0; b < dim; ++b) {
      if (b & s) continue;
      const cplx a0 = rho(b, j), a1 = rho(b | s, j);
      rho(b, j) = u(0, 0) * a0 + u(0, 1) * a1;
      rho(b | s, j) = u(1, 0) * a0 + u(1, 1) * a1;
    }
  // (U rho) U^dagger
  const Eigen::Matrix2cd uc = u.conjugate();
  for (Index k = 0; k < dim; ++k) {
    if (k & s) continue;
    for (Index i = 0; i < dim; ++i) {
      const cplx a0 = rho(i, k), a1 = rho(i, k | s);
      rho(i, k) = uc(0, 0) * a0 + uc(0, 1) * a1;
      rho(i, k | s) = uc(1, 0) * a0 + uc(1, 1) * a1;
    }
  }
}

Statevector basis_state(int num_qubits, std::uint64_t index) {
  Statevector psi = Statevector::Zero(Index{1} << num_qubits);
  psi(static_cast<Index>(index)) = 1.0;
  return psi;
}

Statevector run_statevector(const Circuit& c, int cap) {
  if (c.width > cap)
    throw ResourceLimitError("statevector width " + std::to_string(c.width) +
                             " exceeds cap " + std::to_string(cap));
  Statevector psi = basis_state(c.width);
  for (const auto& g : c.gates) {
    check_gate(g, c.width);
    apply_gate(psi, g);
  }
  return psi;
}

NoiseModel NoiseModel::uniform_readout(int num_qubits, double p10, double p01) {
  NoiseModel nm;
  nm.readout.assign(static_cast<std::size_t>(num_qubits), {p10, p01});
  return nm;
}

bool NoiseModel::has_readout_noise() const {
  if (response) return true;
  return std::any_of(readout.begin(), readout.end(), [](const ReadoutError& e) {
    return e.p10 != 0.0 || e.p01 != 0.0;
  });
}

void NoiseModel::validate(int num_qubits) const {
  auto prob = [](double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0))
      throw ValidationError(std::string(what) + " probability " +
                            std::to_string(p) + " outside [0, 1]");
  };
  for (const auto& e : readout) {
    prob(e.p10, "readout p10");
    prob(e.p01, "readout p01");
  }
  if (static_cast<int>(readout.size()) > num_qubits)
    throw DimensionError("noise model lists more qubits than the register");
  prob(depolarizing_1q, "1-qubit depolarizing");
  prob(depolarizing_2q, "2-qubit depolarizing");
  if (response) {
    const Index dim = Index{1} << num_qubits;
    if (response->rows() != dim || response->cols() != dim)
      throw DimensionError("response matrix does not match register width");
    for (Index j = 0; j < dim; ++j) {
      if (std::abs(response->col(j).sum() - 1.0) > 1e-9)
        throw ValidationError("response matrix is not column-stochastic");
      for (Index i = 0; i < dim; ++i) prob((*response)(i, j), "response");
    }
  }
}

std::string NoiseModel::describe() const {
  std::ostringstream ss;
  ss.precision(6);
  if (response) {
    ss << "readout=response-matrix";
  } else {
    ss << "readout=[";
    for (std::size_t k = 0; k < readout.size(); ++k)
      ss << (k ? ";" : "") << readout[k].p10 << "/" << readout[k].p01;
    ss << "]";
  }
  ss << " depol1=" << depolarizing_1q << " depol2=" << depolarizing_2q;
  return ss.str();
}

void apply_depolarizing(DensityMatrix& rho, std::span<const int> qubits,
                        double p) {
  if (p == 0.0 || qubits.empty()) return;
  const Index dim = rho.rows();
  Index mask = 0;
  for (int q : qubits) mask |= Index{1} << q;
  const int k = static_cast<int>(qubits.size());
  const Index d = Index{1} << k;

  // Enumerate the 2^k assignments of the masked bits.
  std::vector<Index> sub(static_cast<std::size_t>(d), 0);
  for (Index a = 0; a < d; ++a)
    for (int t = 0; t < k; ++t)
      if ((a >> t) & 1) sub[a] |= Index{1} << qubits[t];

  DensityMatrix mixed = DensityMatrix::Zero(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    if (j & mask) continue;
    for (Index i = 0; i < dim; ++i) {
      if (i & mask) continue;
      cplx tr = 0;
      for (Index a = 0; a < d; ++a) tr += rho(i | sub[a], j | sub[a]);
      tr /= static_cast<double>(d);
      for (Index a = 0; a < d; ++a) mixed(i | sub[a], j | sub[a]) = tr;
    }
  }
  rho = (1.0 - p) * rho + p * mixed;
}

DensityMatrix run_density_matrix(const Circuit& c, const NoiseModel& nm,
                                 int cap) {
  if (c.width > cap)
    throw ResourceLimitError("density-matrix width " +
                             std::to_string(c.width) + " exceeds cap " +
                             std::to_string(cap));
  nm.validate(c.width);
  const Index dim = Index{1} << c.width;
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  rho(0, 0) = 1.0;
  for (const auto& g : c.gates) {
    check_gate(g, c.width);
    apply_gate(rho, g);
    if (g.kind == GateKind::CNOT) {
      const int qs[2] = {g.qubit, g.target};
      apply_depolarizing(rho, qs, nm.depolarizing_2q);
    } else {
      const int qs[1] = {g.qubit};
      apply_depolarizing(rho, qs, nm.depolarizing_1q);
    }
  }
  return rho;
}

int num_qubits_of(const QuantumState& s) {
  return std::visit([](const auto& m) { return width_of(m.rows()); }, s);
}

Eigen::VectorXd rotated_probabilities(const QuantumState& s,
                                      const PauliString& basis) {
  const int n = num_qubits_of(s);
  if (basis.num_qubits() != n)
    throw DimensionError("term width " + std::to_string(basis.num_qubits()) +
                         " does not match state width " + std::to_string(n));
  std::vector<Gate> rot;
  for (int q = 0; q < n; ++q) {
    if (basis[q] == Pauli::X) {
      rot.push_back({GateKind::H, q});
    } else if (basis[q] == Pauli::Y) {
      rot.push_back({GateKind::Sdg, q});
      rot.push_back({GateKind::H, q});
    }
  }
  if (const auto* psi = std::get_if<Statevector>(&s)) {
    Statevector v = *psi;
    for (const auto& g : rot) apply_gate(v, g);
    return v.cwiseAbs2();
  }
  DensityMatrix rho = std::get<DensityMatrix>(s);
  for (const auto& g : rot) apply_gate(rho, g);
  return rho.diagonal().real().cwiseMax(0.0);
}

Eigen::VectorXd apply_readout_channel(const Eigen::VectorXd& probs,
                                      const NoiseModel& nm) {
  if (nm.response) {
    if (nm.response->cols() != probs.size())
      throw DimensionError("response matrix does not match distribution");
    return (*nm.response) * probs;
  }
  Eigen::VectorXd p = probs;
  const Index dim = p.size();
  for (std::size_t k = 0; k < nm.readout.size(); ++k) {
    const auto [p10, p01] = nm.readout[k];
    if (p10 == 0.0 && p01 == 0.0) continue;
    const Index s = Index{1} << k;
    if (s >= dim) throw DimensionError("readout error on missing qubit");
    for (Index b = 0; b < dim; ++b) {
      if (b & s) continue;
      const double p0 = p(b), p1 = p(b | s);
      p(b) = (1.0 - p10) * p0 + p01 * p1;
      p(b | s) = p10 * p0 + (1.0 - p01) * p1;
    }
  }
  return p;
}

Eigen::VectorXd term_distribution(const QuantumState& s,
                                  const PauliString& term,
                                  const NoiseModel& nm) {
  return apply_readout_channel(rotated_probabilities(s, term), nm);
}

std::string bitstring(std::uint64_t index, int num_qubits) {
  std::string b(static_cast<std::size_t>(num_qubits), '0');
  for (int k = 0; k < num_qubits; ++k)
    if ((index >> k) & 1) b[k] = '1';
  return b;
}

std::uint64_t bitstring_index(const std::string& bits) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k] == '1')
      idx |= std::uint64_t{1} << k;
    else if (bits[k] != '0')
      throw ValidationError("bitstring '" + bits + "' must contain only 0/1");
  }
  return idx;
}

void throw_empty_counts() {
  throw ValidationError("counts are empty");
}

Counts sample_counts(const Eigen::VectorXd& probs, int num_qubits,
                     std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw ValidationError("shots must be positive");
  if (probs.size() != (Index{1} << num_qubits))
    throw DimensionError("distribution size does not match width");
  std::vector<double> cdf(static_cast<std::size_t>(probs.size()));
  double acc = 0.0;
  for (Index i = 0; i < probs.size(); ++i) {
    if (probs(i) < -1e-12)
      throw ValidationError("negative probability in sampling distribution");
    acc += std::max(0.0, probs(i));
    cdf[i] = acc;
  }
  if (acc <= 0.0) throw ValidationError("distribution has zero mass");

  std::vector<std::uint64_t> hits(cdf.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = rng.uniform() * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    ++hits[static_cast<std::size_t>(it - cdf.begin())];
  }
  Counts c{num_qubits, shots, {}};
  for (std::size_t i = 0; i < hits.size(); ++i)
    if (hits[i]) c.histogram[bitstring(i, num_qubits)] = hits[i];
  return c;
}

Counts measure_term(const QuantumState& s, const PauliString& term,
                    std::uint64_t shots, std::uint64_t seed,
                    const NoiseModel& nm) {
  if (shots == 0) throw ValidationError("shots must be positive");
  const int n = num_qubits_of(s);
  return sample_counts(term_distribution(s, term, nm), n, shots, seed);
}

Estimate counts_expectation(const Counts& counts, std::uint64_t support) {
  return counts_expectation(counts.histogram, support);
}

std::uint64_t qubit_mask(std::span<const int> qubits) {
  std::uint64_t m = 0;
  for (int q : qubits) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace qreact
