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
#include "qreact/backends.hpp"
#include "qreact/error.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>
#include <random>

using namespace qreact;
using oracle::kron;

namespace {

// Independent single-qubit matrices.
Eigen::Matrix2cd single(const Gate& g) {
  const cplx i(0.0, 1.0);
  const double c = std::cos(g.theta / 2);
  const double s = std::sin(g.theta / 2);
  Eigen::Matrix2cd m;
  switch (g.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::H: m << 1, 1, 1, -1; m /= std::sqrt(2.0); break;
    case GateKind::S: m << 1, 0, 0, i; break;
    case GateKind::Sdg: m << 1, 0, 0, -i; break;
    case GateKind::Rx: m << c, -i * s, -i * s, c; break;
    case GateKind::Ry: m << c, -s, s, c; break;
    case GateKind::Rz: m << std::exp(-i * (g.theta / 2)), 0, 0, std::exp(i * (g.theta / 2)); break;
    default: m.setIdentity();
  }
  return m;
}

Eigen::MatrixXcd full_gate(const Gate& g, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (g.kind == GateKind::CNOT) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      Eigen::Index out = b;
      if (b >> g.qubit & 1) out ^= Eigen::Index{1} << g.target;
      m(out, b) = 1.0;
    }
    return m;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q)
    m = kron(q == g.qubit ? Eigen::MatrixXcd(single(g))
                          : Eigen::MatrixXcd::Identity(2, 2),
             m);
  return m;
}

Circuit random_circuit(int n, int gates, std::mt19937_64& gen) {
  std::uniform_int_distribution<int> kind(0, 7);
  std::uniform_int_distribution<int> qubit(0, n - 1);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  Circuit c{n, {}};
  for (int k = 0; k < gates; ++k) {
    Gate g;
    g.kind = static_cast<GateKind>(kind(gen));
    g.qubit = qubit(gen);
    if (g.kind == GateKind::CNOT) {
      if (n < 2) continue;
      do g.target = qubit(gen);
      while (g.target == g.qubit);
    }
    if (g.is_rotation()) g.theta = angle(gen);
    c.gates.push_back(g);
  }
  return c;
}

Eigen::VectorXcd bell() {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("statevector examples", "[statevector]") {
  const auto x = run_statevector({1, {{GateKind::X, 0}}});
  CHECK(std::abs(x(0)) == 0.0);
  CHECK(x(1) == cplx(1.0, 0.0));

  const auto b = run_statevector({2, {{GateKind::H, 0}, {GateKind::CNOT, 0, 1}}});
  CHECK((b - bell()).norm() < 1e-15);

  CHECK_THROWS_AS(run_statevector({21, {}}), ResourceLimitError);
  CHECK_THROWS_AS(run_statevector({2, {{GateKind::CNOT, 0, 0}}}),
                  ValidationError);
  CHECK_THROWS_AS(run_statevector({2, {{GateKind::X, 2}}}), DimensionError);
}

TEST_CASE("statevector equals the dense unitary product", "[statevector][property]") {
  std::mt19937_64 gen(101);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_circuit(3, 25, gen);
    Eigen::VectorXcd ref = Eigen::VectorXcd::Zero(8);
    ref(0) = 1.0;
    for (const auto& g : c.gates) ref = full_gate(g, 3) * ref;
    REQUIRE((run_statevector(c) - ref).norm() < 1e-10);
  }
}

TEST_CASE("gates preserve the norm", "[statevector][property]") {
  std::mt19937_64 gen(103);
  const auto c = random_circuit(5, 1000, gen);
  Statevector psi = basis_state(5);
  for (const auto& g : c.gates) {
    apply_gate(psi, g);
    REQUIRE(std::abs(psi.norm() - 1.0) < 1e-10);
  }
}

TEST_CASE("noiseless density matrix equals the pure state", "[density]") {
  std::mt19937_64 gen(107);
  for (int n = 1; n <= 6; ++n) {
    const auto c = random_circuit(n, 30, gen);
    const auto psi = run_statevector(c);
    const auto rho = run_density_matrix(c, NoiseModel{});
    REQUIRE((rho - psi * psi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    QubitHamiltonian h(n, 0.3);
    for (int k = 0; k < 6; ++k) h.add_term(oracle::random_letters(n, gen), 0.1 * k - 0.2);
    REQUIRE(std::abs(density_expectation(h, rho) - expectation(h, psi)) < 1e-10);
  }
  CHECK_THROWS_AS(run_density_matrix({11, {}}, NoiseModel{}), ResourceLimitError);
}

TEST_CASE("full depolarizing leaves a maximally mixed marginal", "[density]") {
  NoiseModel nm;
  nm.depolarizing_1q = 1.0;
  const auto rho = run_density_matrix(
      {2, {{GateKind::H, 1}, {GateKind::Ry, 0, -1, 0.7}}}, nm);
  // marginal of qubit 0
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int other = 0; other < 2; ++other)
        m(a, b) += rho(a + 2 * other, b + 2 * other);
  CHECK((m - 0.5 * Eigen::Matrix2cd::Identity()).norm() < 1e-12);
}

TEST_CASE("depolarized CNOT matches the superoperator oracle", "[density]") {
  const double p = 0.01;
  NoiseModel nm;
  nm.depolarizing_2q = p;
  const Circuit c{2, {{GateKind::H, 0}, {GateKind::CNOT, 0, 1}}};
  const auto rho = run_density_matrix(c, nm);

  // Column-major vec: vec(U rho U^dagger) = (conj(U) (x) U) vec(rho);
  // depolarizing: (1 - p) I + p vec(I/4) vec(I)^T.
  auto super_of = [](const Eigen::MatrixXcd& u) {
    return kron(u.conjugate(), u);
  };
  Eigen::MatrixXcd vec_id(16, 1);
  vec_id.setZero();
  for (int k = 0; k < 4; ++k) vec_id(5 * k, 0) = 1.0;
  const Eigen::MatrixXcd depol = (1 - p) * Eigen::MatrixXcd::Identity(16, 16) +
                                 p * 0.25 * vec_id * vec_id.transpose();
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(16, 1);
  v(0, 0) = 1.0;
  v = super_of(full_gate(c.gates[0], 2)) * v;
  v = depol * super_of(full_gate(c.gates[1], 2)) * v;
  const Eigen::MatrixXcd ref = Eigen::Map<Eigen::MatrixXcd>(v.data(), 4, 4);
  CHECK((rho - ref).norm() < 1e-12);
  CHECK(std::abs(pauli_expectation(PauliString::parse("XX"), rho) -
                 cplx(0.99, 0.0)) < 1e-12);
  CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
}

TEST_CASE("noise model validation", "[noise]") {
  NoiseModel nm = NoiseModel::uniform_readout(2, 0.1, 1.2);
  CHECK_THROWS_AS(nm.validate(2), ValidationError);
  NoiseModel dp;
  dp.depolarizing_2q = -0.1;
  CHECK_THROWS_AS(dp.validate(2), ValidationError);
  NoiseModel wide = NoiseModel::uniform_readout(3, 0.1, 0.1);
  CHECK_THROWS_AS(wide.validate(2), DimensionError);
}

TEST_CASE("measure_term examples", "[sampling]") {
  const Statevector zero = basis_state(1);
  const auto c = measure_term(zero, PauliString::parse("Z"), 100, 1, NoiseModel{});
  CHECK(c.shots == 100);
  REQUIRE(c.histogram.size() == 1);
  CHECK(c.histogram.at("0") == 100);

  const auto noisy = term_distribution(zero, PauliString::parse("Z"),
                                       NoiseModel::uniform_readout(1, 0.1, 0.0));
  CHECK(noisy(1) == Catch::Approx(0.1).epsilon(1e-15));

  CHECK_THROWS_AS(measure_term(zero, PauliString::parse("Z"), 0, 1, NoiseModel{}),
                  ValidationError);
  CHECK_THROWS_AS(measure_term(zero, PauliString::parse("ZZ"), 10, 1, NoiseModel{}),
                  DimensionError);
}

TEST_CASE("Bell XX estimates concentrate around one", "[sampling][statistics]") {
  const Statevector b = bell();
  const auto xx = PauliString::parse("XX");
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = measure_term(b, xx, 8192, seed, NoiseModel{});
    for (const auto& [bits, n] : c.histogram) REQUIRE((bits == "00" || bits == "11"));
    const auto e = counts_expectation(c, xx.support());
    REQUIRE(std::abs(e.value - 1.0) <= 3.0 / std::sqrt(8192.0));
  }
}

TEST_CASE("counts_expectation arithmetic", "[sampling]") {
  Counts a{2, 8192, {{"00", 8192}}};
  auto ea = counts_expectation(a, 0b11);
  CHECK(ea.value == 1.0);
  CHECK(ea.std_error == 0.0);

  Counts b{2, 8192, {{"01", 4096}, {"10", 4096}}};
  auto eb = counts_expectation(b, 0b11);
  CHECK(eb.value == -1.0);
  CHECK(eb.std_error == 0.0);

  Counts c{2, 8192, {{"00", 6144}, {"11", 2048}}};
  auto ec = counts_expectation(c, 0b01);
  CHECK(ec.value == 0.5);
  CHECK(ec.std_error == Catch::Approx(std::sqrt(0.75 / 8192)).epsilon(1e-14));

  CHECK_THROWS_AS(counts_expectation(Counts{2, 0, {}}, 1), ValidationError);
}

TEST_CASE("sampled estimates are unbiased", "[sampling][statistics]") {
  std::mt19937_64 gen(109);
  for (int trial = 0; trial < 5; ++trial) {
    const int n = 3;
    const auto psi = oracle::random_state(n, gen);
    auto letters = oracle::random_letters(n, gen);
    if (letters == "III") letters = "ZII";
    const auto p = PauliString::parse(letters);
    const double exact = pauli_expectation(p, psi).real();
    const int seeds = 200;
    const std::uint64_t shots = 1000;
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s)
      mean += counts_expectation(measure_term(psi, p, shots, s, NoiseModel{}),
                                 p.support()).value;
    mean /= seeds;
    const double se = std::sqrt((1 - exact * exact) / (shots * seeds));
    REQUIRE(std::abs(mean - exact) <= 4 * se + 1e-12);
  }
}

TEST_CASE("sampling is deterministic", "[sampling]") {
  std::mt19937_64 gen(113);
  const auto psi = oracle::random_state(3, gen);
  const auto p = PauliString::parse("XYZ");
  const auto nm = NoiseModel::uniform_readout(3, 0.02, 0.03);
  const auto a = measure_term(psi, p, 8192, 77, nm);
  const auto b = measure_term(psi, p, 8192, 77, nm);
  CHECK(a == b);
  const auto c = measure_term(psi, p, 8192, 78, nm);
  CHECK_FALSE(a == c);
}

TEST_CASE("readout channel composition", "[noise][property]") {
  std::mt19937_64 gen(127);
  std::uniform_real_distribution<double> d(0.0, 0.3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto psi = oracle::random_state(3, gen);
    Eigen::VectorXd probs = psi.cwiseAbs2();
    NoiseModel nm;
    for (int q = 0; q < 3; ++q) nm.readout.push_back({d(gen), d(gen)});
    const NoiseModel clean = NoiseModel::uniform_readout(3, 0.0, 0.0);
    const auto once = apply_readout_channel(probs, nm);
    const auto twice = apply_readout_channel(apply_readout_channel(probs, nm), clean);
    REQUIRE((once - twice).norm() < 1e-15);
    REQUIRE(std::abs(once.sum() - 1.0) < 1e-12);
  }
}

TEST_CASE("readout channel matches an explicit tensor product", "[noise]") {
  NoiseModel nm;
  nm.readout = {{0.1, 0.2}, {0.05, 0.3}};
  Eigen::MatrixXcd a0(2, 2), a1(2, 2);
  a0 << 0.9, 0.2, 0.1, 0.8;
  a1 << 0.95, 0.3, 0.05, 0.7;
  const Eigen::MatrixXd full = kron(a1, a0).real();
  Eigen::VectorXd probs(4);
  probs << 0.1, 0.2, 0.3, 0.4;
  CHECK((apply_readout_channel(probs, nm) - full * probs).norm() < 1e-15);

  NoiseModel corr;
  corr.response = full;
  CHECK((apply_readout_channel(probs, corr) - full * probs).norm() < 1e-15);
}

TEST_CASE("bitstring helpers", "[sampling]") {
  CHECK(bitstring(1, 3) == "100");
  CHECK(bitstring(6, 3) == "011");
  CHECK(bitstring_index("011") == 6);
  CHECK_THROWS_AS(bitstring_index("01x"), ValidationError);
}
