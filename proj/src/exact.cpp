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

#include "qreact/exact.hpp"

#include "qreact/error.hpp"

#include <string>

namespace qreact {

namespace {

// Orthonormal basis of the eigenspace of the Hermitian matrix `op` for
// eigenvalue `target` (within 1e-8), as columns.
Eigen::MatrixXcd eigenspace(const Eigen::MatrixXcd& op, double target) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(op);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()(i) - target) < 1e-8) keep.push_back(i);
  Eigen::MatrixXcd basis(op.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k)
    basis.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(keep[k]);
  return basis;
}

}  // namespace

SpectrumResult ground_state(const QubitHamiltonian& h, int dense_cap) {
  const Eigen::MatrixXcd m = to_matrix(h, dense_cap);
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-10)
    throw HermiticityError("Hamiltonian matrix is not Hermitian (residue " +
                           std::to_string(asym) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed");
  SpectrumResult r;
  r.eigenvalues = es.eigenvalues();
  r.ground_state = es.eigenvectors().col(0);
  r.ground_energy = r.eigenvalues(0);
  r.residual = (m * r.ground_state - r.ground_energy * r.ground_state).norm();
  return r;
}

double commutator_norm(const QubitHamiltonian& a, const QubitHamiltonian& b,
                       int dense_cap) {
  const Eigen::MatrixXcd ma = to_matrix(a, dense_cap);
  const Eigen::MatrixXcd mb = to_matrix(b, dense_cap);
  const Eigen::MatrixXcd c = ma * mb - mb * ma;
  return c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
}

double sector_ground(const QubitHamiltonian& h, double n_target,
                     double sz_target, const SymmetryOperators& sym,
                     int dense_cap) {
  if (sym.number.num_qubits() != h.num_qubits() ||
      sym.sz.num_qubits() != h.num_qubits())
    throw DimensionError("symmetry operators do not match Hamiltonian width");
  if (commutator_norm(h, sym.number, dense_cap) > 1e-10 ||
      commutator_norm(h, sym.sz, dense_cap) > 1e-10)
    throw ValidationError("Hamiltonian does not commute with N and S_z");

  const Eigen::MatrixXcd hm = to_matrix(h, dense_cap);
  const Eigen::MatrixXcd v = eigenspace(to_matrix(sym.number, dense_cap), n_target);
  if (v.cols() == 0)
    throw DomainError("no states with N = " + std::to_string(n_target));
  const Eigen::MatrixXcd szr = v.adjoint() * to_matrix(sym.sz, dense_cap) * v;
  const Eigen::MatrixXcd w = eigenspace(0.5 * (szr + szr.adjoint()), sz_target);
  if (w.cols() == 0)
    throw DomainError("no states with N = " + std::to_string(n_target) +
                      ", S_z = " + std::to_string(sz_target));
  const Eigen::MatrixXcd u = v * w;
  const Eigen::MatrixXcd hr = u.adjoint() * hm * u;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (hr + hr.adjoint()),
                                                      Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace qreact
