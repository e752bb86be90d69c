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
#include "qreact/error.hpp"
#include "qreact/pauli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

using namespace qreact;
using qreact::oracle::pauli_kron;

namespace {

PauliString ps(const char* s) { return PauliString::parse(s); }

QubitHamiltonian random_hamiltonian(int n, int terms, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  QubitHamiltonian h(n, d(gen));
  for (int t = 0; t < terms; ++t)
    h.add_term(oracle::random_letters(n, gen), d(gen));
  return h;
}

}  // namespace

TEST_CASE("Pauli multiplication table", "[pauli]") {
  auto xy = mul(ps("X"), ps("Y"));
  CHECK(xy.phase() == cplx(0, 1));
  CHECK(xy.string == ps("Z"));

  auto zz = mul(ps("Z"), ps("Z"));
  CHECK(zz.phase() == cplx(1, 0));
  CHECK(zz.string == ps("I"));

  auto q = mul(ps("XI"), ps("XZ"));
  CHECK(q.phase() == cplx(1, 0));
  CHECK(q.string == ps("IZ"));

  CHECK_THROWS_AS(mul(ps("X"), ps("XX")), DimensionError);
}

TEST_CASE("Pauli product matches dense matrices", "[pauli][property]") {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const auto a = oracle::random_letters(n, gen);
    const auto b = oracle::random_letters(n, gen);
    const auto r = mul(ps(a.c_str()), ps(b.c_str()));
    const Eigen::MatrixXcd lhs = pauli_kron(a) * pauli_kron(b);
    const Eigen::MatrixXcd rhs = r.phase() * pauli_kron(r.string.str());
    REQUIRE((lhs - rhs).norm() < 1e-14);
  }
}

TEST_CASE("Pauli multiplication is associative and self-inverse",
          "[pauli][property]") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + trial % 7;
    const auto p = ps(oracle::random_letters(n, gen).c_str());
    const auto q = ps(oracle::random_letters(n, gen).c_str());
    const auto r = ps(oracle::random_letters(n, gen).c_str());
    const auto pq = mul(p, q);
    const auto left = mul(pq.string, r);
    const auto qr = mul(q, r);
    const auto right = mul(p, qr.string);
    REQUIRE(left.string == right.string);
    REQUIRE((pq.phase_power + left.phase_power) % 4 ==
            (qr.phase_power + right.phase_power) % 4);

    const auto pp = mul(p, p);
    REQUIRE(pp.phase_power == 0);
    REQUIRE(pp.string.is_identity());
  }
}

TEST_CASE("Pauli string parsing and ordering", "[pauli]") {
  const auto p = ps("XIYZ");
  CHECK(p.num_qubits() == 4);
  CHECK(p[0] == Pauli::X);
  CHECK(p[2] == Pauli::Y);
  CHECK(p.weight() == 3);
  CHECK(p.str() == "XIYZ");
  CHECK_THROWS_AS(PauliString::parse("XQ"), ValidationError);
  CHECK_THROWS_AS(PauliString::parse(""), ValidationError);
  CHECK(ps("IX") < ps("XI"));
  CHECK(ps("XZ") < ps("YI"));
}

TEST_CASE("simplify combines, thresholds and folds identity", "[pauli]") {
  QubitHamiltonian h(2);
  h.add_term("XZ", 0.3);
  h.add_term("XZ", 0.2);
  auto s = simplify(h);
  REQUIRE(s.terms().size() == 1);
  CHECK(s.terms()[0].pauli == ps("XZ"));
  CHECK(s.terms()[0].coeff == Catch::Approx(0.5).epsilon(1e-15));

  QubitHamiltonian tiny(2);
  tiny.add_term("ZI", 1e-15);
  CHECK(simplify(tiny, 1e-12).terms().empty());

  QubitHamiltonian fold(2);
  fold.add_term("II", 2.0);
  fold.add_term("ZZ", 1.0);
  auto f = simplify(fold);
  REQUIRE(f.terms().size() == 1);
  CHECK(f.terms()[0].pauli == ps("ZZ"));
  CHECK(f.constant() == 2.0);

  CHECK_THROWS_AS(simplify(h, -1.0), ValidationError);
  CHECK_THROWS_AS(h.add_term("XZI", 1.0), DimensionError);
}

TEST_CASE("simplify is idempotent and operator preserving",
          "[pauli][property]") {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    auto h = random_hamiltonian(n, 12, gen);
    h.add_term(h.terms()[0].pauli, 0.25);
    h.add_term(std::string(static_cast<std::size_t>(n), 'I'), 0.5);
    const auto s = simplify(h);
    REQUIRE(simplify(s) == s);
    REQUIRE((to_matrix(h) - to_matrix(s)).cwiseAbs().maxCoeff() < 1e-12);
    for (const auto& t : s.terms()) REQUIRE_FALSE(t.pauli.is_identity());
  }
}

TEST_CASE("to_matrix small cases", "[pauli]") {
  QubitHamiltonian z(1);
  z.add_term("Z", 1.0);
  Eigen::Matrix2cd zm;
  zm << 1, 0, 0, -1;
  CHECK((to_matrix(z) - zm).norm() == 0.0);

  QubitHamiltonian x(1);
  x.add_term("X", 1.0);
  Eigen::Matrix2cd xm;
  xm << 0, 1, 1, 0;
  CHECK((to_matrix(x) - xm).norm() == 0.0);

  QubitHamiltonian big(15);
  CHECK_THROWS_AS(to_matrix(big), ResourceLimitError);
}

TEST_CASE("to_matrix agrees with scalar Kronecker expansion", "[pauli]") {
  QubitHamiltonian h(2, -1.0);
  h.add_term("ZZ", 0.5);
  h.add_term("XI", 0.2);

  // Hand-expanded: ZZ = diag(1,-1,-1,1); X on qubit 0 (low bit) couples
  // |00>-|01> and |10>-|11>.
  Eigen::Matrix4cd hand = Eigen::Matrix4cd::Zero();
  const double zz[4] = {1, -1, -1, 1};
  for (int i = 0; i < 4; ++i) hand(i, i) = -1.0 + 0.5 * zz[i];
  hand(0, 1) = hand(1, 0) = hand(2, 3) = hand(3, 2) = 0.2;

  const Eigen::MatrixXcd m = to_matrix(h);
  CHECK((m - hand).norm() < 1e-15);
  CHECK((m - m.adjoint()).norm() < 1e-12);
  const auto ev = oracle::sorted_eigenvalues(m);
  const auto ref = oracle::sorted_eigenvalues(hand);
  CHECK((ev - ref).norm() < 1e-12);
  // eigenvalues are -1 +/- sqrt(0.25 + 0.04), each twice
  CHECK(ev(0) == Catch::Approx(-1.0 - std::sqrt(0.29)).epsilon(1e-14));
  CHECK(ev(3) == Catch::Approx(-1.0 + std::sqrt(0.29)).epsilon(1e-14));
}

TEST_CASE("to_matrix matches brute-force Kronecker oracle",
          "[pauli][property]") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 5;
    const auto h = random_hamiltonian(n, 8, gen);
    std::vector<std::pair<std::string, double>> terms;
    for (const auto& t : h.terms()) terms.emplace_back(t.pauli.str(), t.coeff);
    const auto ref = oracle::hamiltonian_kron(n, h.constant(), terms);
    REQUIRE((to_matrix(h) - ref).norm() < 1e-12);
  }
}

TEST_CASE("expectation examples", "[pauli]") {
  QubitHamiltonian z(1);
  z.add_term("Z", 1.0);
  Eigen::VectorXcd zero(2);
  zero << 1, 0;
  CHECK(expectation(z, zero) == 1.0);

  QubitHamiltonian xx(2);
  xx.add_term("XX", 1.0);
  Eigen::VectorXcd bell = Eigen::VectorXcd::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  CHECK(expectation(xx, bell) == Catch::Approx(1.0).epsilon(1e-14));

  Eigen::VectorXcd bad = 2.0 * zero;
  CHECK_THROWS_AS(expectation(z, bad), ValidationError);
  CHECK_THROWS_AS(expectation(xx, zero), DimensionError);
}

TEST_CASE("expectation equals dense quadratic form", "[pauli][property]") {
  std::mt19937_64 gen(23);
  {
    QubitHamiltonian h(2);
    h.add_term("ZZ", 0.5);
    h.add_term("XI", 0.2);
    const auto psi = oracle::random_state(2, gen);
    const auto m = oracle::hamiltonian_kron(2, 0.0, {{"ZZ", 0.5}, {"XI", 0.2}});
    CHECK(std::abs(expectation(h, psi) - (psi.adjoint() * m * psi)(0).real()) <
          1e-10);
  }
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 6;
    const auto h = random_hamiltonian(n, 10, gen);
    const auto psi = oracle::random_state(n, gen);
    const cplx dense = (psi.adjoint() * to_matrix(h) * psi)(0);
    REQUIRE(std::abs(expectation(h, psi) - dense.real()) < 1e-10);
    const Eigen::MatrixXcd rho = psi * psi.adjoint();
    REQUIRE(std::abs(density_expectation(h, rho) - dense.real()) < 1e-10);
  }
}

TEST_CASE("qubit-wise commuting groups", "[pauli]") {
  auto groups_of = [](std::vector<const char*> letters) {
    QubitHamiltonian h(static_cast<int>(std::string(letters[0]).size()));
    double c = 1.0;
    for (auto s : letters) h.add_term(s, c++);
    return group_qubitwise_commuting(h);
  };
  CHECK(groups_of({"ZI", "IZ", "ZZ"}).size() == 1);
  CHECK(groups_of({"XI", "ZI"}).size() == 2);
  CHECK(groups_of({"XX", "YY", "ZZ"}).size() == 3);
}

TEST_CASE("qubit-wise groups are compatible and cover all terms",
          "[pauli][property]") {
  std::mt19937_64 gen(29);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 5;
    const auto h = simplify(random_hamiltonian(n, 15, gen));
    const auto groups = group_qubitwise_commuting(h);
    std::size_t total = 0;
    std::set<std::string> seen;
    for (const auto& g : groups) {
      total += g.size();
      for (std::size_t a = 0; a < g.size(); ++a) {
        seen.insert(g[a].pauli.str());
        for (std::size_t b = a + 1; b < g.size(); ++b)
          for (int q = 0; q < n; ++q) {
            const Pauli pa = g[a].pauli[q];
            const Pauli pb = g[b].pauli[q];
            REQUIRE((pa == pb || pa == Pauli::I || pb == Pauli::I));
          }
      }
    }
    REQUIRE(total == h.terms().size());
    REQUIRE(seen.size() == h.terms().size());
  }
}

TEST_CASE("PauliSum rejects imaginary coefficients", "[pauli]") {
  auto s = PauliSum::term(ps("XY"), cplx(0.0, 1e-3));
  CHECK_THROWS_AS(to_hamiltonian(s), HermiticityError);
  auto ok = PauliSum::term(ps("XY"), cplx(0.5, 1e-13));
  const auto h = to_hamiltonian(ok);
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms()[0].coeff == 0.5);
}
