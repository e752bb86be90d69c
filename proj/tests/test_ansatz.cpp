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

#include "oracles.hpp"
#include "qreact/ansatz.hpp"
#include "qreact/backends.hpp"
#include "qreact/error.hpp"
#include "qreact/fermion.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <numbers>
#include <random>

using namespace qreact;

namespace {

std::vector<double> random_theta(int m, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> d(-std::numbers::pi, std::numbers::pi);
  std::vector<double> t(static_cast<std::size_t>(m));
  for (auto& x : t) x = d(gen);
  return t;
}

// Columns are U|b> for every basis state b, built by preparing b with X
// gates in front of the circuit.
Eigen::MatrixXcd circuit_unitary(const Circuit& c) {
  const Eigen::Index dim = Eigen::Index{1} << c.width;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    Circuit prep{c.width, {}};
    for (int q = 0; q < c.width; ++q)
      if (b >> q & 1) prep.gates.push_back({GateKind::X, q});
    prep.gates.insert(prep.gates.end(), c.gates.begin(), c.gates.end());
    u.col(b) = run_statevector(prep);
  }
  return u;
}

double phase_insensitive_distance(const Eigen::MatrixXcd& a,
                                  const Eigen::MatrixXcd& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).norm();
}

}  // namespace

TEST_CASE("Hartree-Fock bitstrings", "[hf]") {
  CHECK(hartree_fock_bits(1, 1, 4, Mapping::JordanWigner, false) == "1010");
  CHECK(hartree_fock_bits(1, 1, 4, Mapping::Parity, false) == "1100");
  CHECK(hartree_fock_bits(1, 1, 4, Mapping::Parity, true) == "10");
  CHECK(hartree_fock_bits(2, 1, 6, Mapping::JordanWigner, false) == "110100");
  CHECK_THROWS_AS(hartree_fock_bits(3, 1, 4, Mapping::JordanWigner, false),
                  ValidationError);
  CHECK_THROWS_AS(hartree_fock_bits(1, 1, 4, Mapping::JordanWigner, true),
                  ValidationError);
}

TEST_CASE("tapered HF state carries two electrons", "[hf]") {
  const auto sym = symmetry_operators(4, Mapping::Parity, TaperSector{1, 1});
  const auto psi = basis_state(2, bitstring_index("10"));
  CHECK(std::abs(expectation(sym.number, psi) - 2.0) < 1e-12);
  CHECK(std::abs(expectation(sym.sz, psi)) < 1e-12);
  CHECK(std::abs(expectation(sym.s2, psi)) < 1e-12);
}

TEST_CASE("resource counts reproduce the two-qubit table", "[resources]") {
  struct Row {
    AnsatzKind kind;
    int depth;
    int cnots;
    int params;
  };
  const Row rows[] = {
      {AnsatzKind::Ry, 1, 1, 4},      {AnsatzKind::Ry, 2, 2, 6},
      {AnsatzKind::Ry, 3, 3, 8},      {AnsatzKind::RyRz, 1, 1, 8},
      {AnsatzKind::RyRz, 2, 2, 12},   {AnsatzKind::RyRz, 3, 3, 16},
      {AnsatzKind::SwapRz, 1, 4, 5},  {AnsatzKind::SwapRz, 2, 8, 8},
      {AnsatzKind::SwapRz, 3, 12, 11}, {AnsatzKind::Uccsd, 1, 4, 3},
      {AnsatzKind::Uccsd, 2, 8, 6},   {AnsatzKind::Uccsd, 3, 12, 9},
  };
  for (const auto& r : rows) {
    INFO(to_string(r.kind) << " d=" << r.depth);
    const auto counts = resource_counts(r.kind, 2, r.depth);
    CHECK(counts.cnots == r.cnots);
    CHECK(counts.params == r.params);
    const auto t = build_ansatz(r.kind, 2, r.depth, "10");
    CHECK(t.num_parameters == r.params);
    CHECK(t.cnot_count() == r.cnots);
  }
  CHECK(resource_counts(AnsatzKind::Ry, 1, 1) == ResourceCounts{0, 2});
}

TEST_CASE("closed forms hold for wider heuristic circuits",
          "[resources][property]") {
  for (auto kind : {AnsatzKind::Ry, AnsatzKind::RyRz, AnsatzKind::SwapRz})
    for (int n = 1; n <= 6; ++n)
      for (int d = 1; d <= 3; ++d) {
        const auto t =
            build_ansatz(kind, n, d, std::string(static_cast<std::size_t>(n), '0'));
        const auto rc = resource_counts(kind, n, d);
        REQUIRE(t.num_parameters == rc.params);
        REQUIRE(t.cnot_count() == rc.cnots);
      }
}

TEST_CASE("ansatz argument validation", "[ansatz]") {
  CHECK_THROWS_AS(build_ansatz(AnsatzKind::Ry, 2, 0, "10"), ValidationError);
  CHECK_THROWS_AS(build_ansatz(AnsatzKind::Ry, 0, 1, ""), ValidationError);
  CHECK_THROWS_AS(build_ansatz(AnsatzKind::Ry, 2, 1, "101"), DimensionError);
  CHECK_THROWS_AS(build_ansatz(AnsatzKind::Uccsd, 4, 1, "1100"), DimensionError);
  CHECK_THROWS_AS(parse_ansatz_kind("ryx"), ValidationError);
  CHECK(parse_ansatz_kind("swaprz") == AnsatzKind::SwapRz);
}

TEST_CASE("binding is deterministic and length checked", "[bind]") {
  const auto t = build_ansatz(AnsatzKind::RyRz, 2, 2, "10");
  std::mt19937_64 gen(7);
  const auto theta = random_theta(t.num_parameters, gen);
  const auto a = bind_parameters(t, theta);
  const auto b = bind_parameters(t, theta);
  CHECK(a == b);
  CHECK(a.dump() == b.dump());
  CHECK_THROWS_AS(bind_parameters(t, std::vector<double>(3, 0.0)),
                  DimensionError);
}

TEST_CASE("circuit dump format", "[bind]") {
  const auto t = build_ansatz(AnsatzKind::Ry, 2, 1, "10");
  const auto c = bind_parameters(t, {0.5, -0.25, 1.0, 0.0});
  CHECK(c.dump() ==
        "X 0\n"
        "X 1\n"
        "RY 0,theta=0.500000000000\n"
        "RY 1,theta=-0.250000000000\n"
        "CNOT 0,1\n"
        "RY 0,theta=1.000000000000\n"
        "RY 1,theta=0.000000000000\n");
}

namespace {

// Basis index reached from `b` by `depth` forward CNOT chains q0->q1->...
std::uint64_t chain_image(std::uint64_t b, int n, int depth) {
  for (int d = 0; d < depth; ++d)
    for (int q = 0; q + 1 < n; ++q)
      if (b >> q & 1) b ^= std::uint64_t{1} << (q + 1);
  return b;
}

std::uint64_t index_of(const std::string& bits) {
  std::uint64_t b = 0;
  for (std::size_t q = 0; q < bits.size(); ++q)
    if (bits[q] == '1') b |= std::uint64_t{1} << q;
  return b;
}

}  // namespace

TEST_CASE("zero parameters give the reference determinant", "[bind]") {
  for (int depth = 1; depth <= 3; ++depth)
    for (auto kind : {AnsatzKind::Ry, AnsatzKind::RyRz, AnsatzKind::SwapRz,
                      AnsatzKind::Uccsd}) {
      INFO(to_string(kind) << " d=" << depth);
      const auto t = build_ansatz(kind, 2, depth, "10");
      const auto psi = run_statevector(
          bind_parameters(t, std::vector<double>(t.num_parameters, 0.0)));
      CHECK(std::abs(std::abs(psi(1)) - 1.0) < 1e-12);
      if (kind != AnsatzKind::SwapRz) CHECK(std::abs(psi(1) - 1.0) < 1e-12);
    }
  // every reference bitstring, widths 1..5
  for (auto kind : {AnsatzKind::Ry, AnsatzKind::RyRz})
    for (int n = 1; n <= 5; ++n)
      for (int depth = 1; depth <= 3; ++depth)
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
          const std::string hf = bitstring(b, n);
          const auto t = build_ansatz(kind, n, depth, hf);
          std::uint64_t prefix = 0;
          for (const auto& g : t.gates)
            if (g.kind == GateKind::X) prefix |= std::uint64_t{1} << g.qubit;
          REQUIRE(chain_image(prefix, n, depth) == index_of(hf));
          const auto psi = run_statevector(
              bind_parameters(t, std::vector<double>(t.num_parameters, 0.0)));
          REQUIRE(std::abs(psi(static_cast<Eigen::Index>(index_of(hf))) - 1.0) < 1e-12);
        }

  UccsdContext jw{2, 1, 1, Mapping::JordanWigner, false};
  const auto t = build_ansatz(AnsatzKind::Uccsd, 4, 1, "1010", jw);
  const auto psi = run_statevector(
      bind_parameters(t, std::vector<double>(t.num_parameters, 0.0)));
  CHECK(std::abs(psi(0b0101) - 1.0) < 1e-12);
}

TEST_CASE("gate inventory equals prefix plus CNOTs plus rotations",
          "[bind][property]") {
  for (auto kind : {AnsatzKind::Ry, AnsatzKind::RyRz})
    for (int n = 1; n <= 4; ++n)
      for (int d = 1; d <= 3; ++d) {
        std::string hf(static_cast<std::size_t>(n), '0');
        hf[0] = '1';
        const auto t = build_ansatz(kind, n, d, hf);
        const auto c =
            bind_parameters(t, std::vector<double>(t.num_parameters, 0.1));
        const auto rc = resource_counts(kind, n, d);
        std::uint64_t preimage = 0;
        while (chain_image(preimage, n, d) != index_of(hf)) ++preimage;
        const int xs = std::popcount(preimage);
        REQUIRE(static_cast<int>(c.gates.size()) == xs + rc.cnots + rc.params);
      }
}

TEST_CASE("SwapRz pair block is the XX+YY rotation", "[swaprz]") {
  // Rz layers at zero leave only the excitation-preserving block.
  std::mt19937_64 gen(13);
  const auto t = build_ansatz(AnsatzKind::SwapRz, 2, 1, "00");
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = random_theta(1, gen)[0];
    const auto u = circuit_unitary(bind_parameters(t, {0, 0, theta, 0, 0}));
    Eigen::Matrix4cd ref = Eigen::Matrix4cd::Zero();
    const cplx i(0.0, 1.0);
    ref(0, 0) = ref(3, 3) = 1.0;
    ref(1, 1) = ref(2, 2) = std::cos(theta);
    ref(1, 2) = ref(2, 1) = -i * std::sin(theta);
    CHECK(phase_insensitive_distance(u, ref) < 1e-12);
  }
}

TEST_CASE("UCCSD circuit equals the product of generator exponentials",
          "[uccsd]") {
  // Dense oracle: exp(-i theta_k G_k) in generator order, applied to HF.
  UccsdContext ctx;
  const auto gens = uccsd_generators(ctx);
  const auto t = build_ansatz(AnsatzKind::Uccsd, 2, 1, "10", ctx);
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto theta = random_theta(t.num_parameters, gen);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(4);
    psi(1) = 1.0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(4, 4);
      for (const auto& [p, c] : gens[k].terms())
        g += c * oracle::pauli_kron(p.str());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
      const Eigen::VectorXcd phases =
          (cplx(0, -1) * theta[k] * es.eigenvalues().cast<cplx>()).array().exp();
      psi = es.eigenvectors() * phases.asDiagonal() *
            es.eigenvectors().adjoint() * psi;
    }
    const auto got = run_statevector(bind_parameters(t, theta));
    const cplx ov = got.dot(psi);
    CHECK(std::abs(std::abs(ov) - 1.0) < 1e-10);
  }
}

TEST_CASE("number-conserving ansaetze keep the electron count",
          "[symmetry][property]") {
  std::mt19937_64 gen(19);
  const auto sym_jw = symmetry_operators(4, Mapping::JordanWigner);
  UccsdContext jw{2, 1, 1, Mapping::JordanWigner, false};
  const auto swap = build_ansatz(AnsatzKind::SwapRz, 4, 1, "1010");
  const auto ucc = build_ansatz(AnsatzKind::Uccsd, 4, 1, "1010", jw);
  UccsdContext par{2, 1, 1, Mapping::Parity, false};
  const auto ucc_par = build_ansatz(AnsatzKind::Uccsd, 4, 1, "1100", par);
  const auto sym_par = symmetry_operators(4, Mapping::Parity);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = run_statevector(
        bind_parameters(swap, random_theta(swap.num_parameters, gen)));
    REQUIRE(std::abs(expectation(sym_jw.number, a) - 2.0) < 1e-10);
    const auto b = run_statevector(
        bind_parameters(ucc, random_theta(ucc.num_parameters, gen)));
    REQUIRE(std::abs(expectation(sym_jw.number, b) - 2.0) < 1e-10);
    REQUIRE(std::abs(expectation(sym_jw.sz, b)) < 1e-10);
    const auto c = run_statevector(
        bind_parameters(ucc_par, random_theta(ucc_par.num_parameters, gen)));
    REQUIRE(std::abs(expectation(sym_par.number, c) - 2.0) < 1e-10);
  }
}

TEST_CASE("SwapRz states have S squared consistent with fixed Sz",
          "[symmetry]") {
  // SwapRz on the JW HOMO/LUMO register exchanges between neighbouring
  // spin orbitals, which mixes alpha and beta: Sz is not conserved but N is.
  // The S^2 expectation must equal the dense projection onto the N = 2
  // subspace.
  std::mt19937_64 gen(23);
  const auto sym = symmetry_operators(4, Mapping::JordanWigner);
  const auto swap = build_ansatz(AnsatzKind::SwapRz, 4, 1, "1010");
  const Eigen::MatrixXcd s2 = to_matrix(sym.s2);
  Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(16, 16);
  for (int b = 0; b < 16; ++b)
    if (std::popcount(static_cast<unsigned>(b)) == 2) proj(b, b) = 1.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = run_statevector(
        bind_parameters(swap, random_theta(swap.num_parameters, gen)));
    const double direct = expectation(sym.s2, psi);
    const Eigen::VectorXcd p = proj * psi;
    CHECK((p - psi).norm() < 1e-10);
    const double dense = (p.adjoint() * proj * s2 * proj * p)(0).real();
    CHECK(std::abs(direct - dense) < 1e-10);
  }
}

TEST_CASE("adjacent CNOT cancellation", "[uccsd]") {
  std::vector<Gate> g = {{GateKind::CNOT, 0, 1}, {GateKind::CNOT, 0, 1},
                         {GateKind::H, 0},       {GateKind::CNOT, 1, 0},
                         {GateKind::CNOT, 0, 1}, {GateKind::CNOT, 0, 1},
                         {GateKind::CNOT, 1, 0}};
  const auto out = cancel_adjacent_cnots(g);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == GateKind::H);
}

TEST_CASE("parameter-shift eligibility", "[bind]") {
  const auto ry = build_ansatz(AnsatzKind::Ry, 2, 1, "10");
  for (bool ok : parameter_shift_slots(ry)) CHECK(ok);
  const auto swap = build_ansatz(AnsatzKind::SwapRz, 2, 1, "10");
  const auto s = parameter_shift_slots(swap);
  CHECK(s[0]);
  CHECK(s[1]);
  CHECK_FALSE(s[2]);
}
