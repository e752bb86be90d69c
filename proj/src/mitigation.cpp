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

#include "qreact/mitigation.hpp"

#include "qreact/error.hpp"
#include "qreact/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>

namespace qreact {

using Eigen::Index;

std::string to_string(CalibrationMethod m) {
  return m == CalibrationMethod::Complete ? "complete" : "tensored";
}

std::string to_string(MitigationMethod m) {
  return m == MitigationMethod::PseudoInverse ? "pseudo_inverse"
                                              : "least_squares";
}

CalibrationMethod parse_calibration_method(std::string_view s) {
  if (s == "complete") return CalibrationMethod::Complete;
  if (s == "tensored") return CalibrationMethod::Tensored;
  throw ValidationError("unknown calibration method '" + std::string(s) + "'");
}

MitigationMethod parse_mitigation_method(std::string_view s) {
  if (s == "pseudo_inverse" || s == "pseudo-inverse")
    return MitigationMethod::PseudoInverse;
  if (s == "least_squares" || s == "least-squares")
    return MitigationMethod::LeastSquares;
  throw ValidationError("unknown mitigation method '" + std::string(s) + "'");
}

void CalibrationMatrix::validate() const {
  const Index dim = Index{1} << num_qubits;
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw DimensionError("calibration matrix does not match its qubit count");
  for (Index j = 0; j < dim; ++j) {
    if (std::abs(matrix.col(j).sum() - 1.0) > 1e-9)
      throw ValidationError("calibration column " + std::to_string(j) +
                            " does not sum to 1");
    for (Index i = 0; i < dim; ++i)
      if (matrix(i, j) < 0.0 || matrix(i, j) > 1.0)
        throw ValidationError("calibration entry outside [0, 1]");
  }
}

namespace {

Circuit preparation_circuit(int n, std::uint64_t index) {
  Circuit c{n, {}};
  for (int k = 0; k < n; ++k)
    if ((index >> k) & 1) c.gates.push_back({GateKind::X, k});
  return c;
}

Eigen::VectorXd empirical(const Counts& counts, int n) {
  if (counts.num_qubits != n)
    throw DimensionError("executor returned counts of the wrong width");
  Eigen::VectorXd v = counts_vector(counts);
  const double total = v.sum();
  if (total <= 0.0) throw ValidationError("executor returned no shots");
  return v / total;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Euclidean projection of v onto {x >= 0, sum x = total}.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double total) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cum = 0.0, tau = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cum += u[j];
    const double t = (cum - total) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) tau = t;
  }
  return (v.array() - tau).cwiseMax(0.0).matrix();
}

}  // namespace

Eigen::VectorXd counts_vector(const Counts& counts) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Index{1} << counts.num_qubits);
  for (const auto& [bits, c] : counts.histogram) {
    if (static_cast<int>(bits.size()) != counts.num_qubits)
      throw DimensionError("bitstring '" + bits + "' has the wrong width");
    v(static_cast<Index>(bitstring_index(bits))) += static_cast<double>(c);
  }
  return v;
}

CalibrationMatrix build_calibration(int n, const CalibrationExecutor& executor,
                                    std::uint64_t shots,
                                    CalibrationMethod method) {
  if (shots == 0) throw ValidationError("calibration shots must be positive");
  if (n < 1 || n > 16)
    throw ResourceLimitError("calibration supports 1..16 qubits");
  const Index dim = Index{1} << n;
  CalibrationMatrix cal{n, Eigen::MatrixXd::Zero(dim, dim), method, shots};
  if (method == CalibrationMethod::Complete) {
    for (Index j = 0; j < dim; ++j)
      cal.matrix.col(j) =
          empirical(executor(preparation_circuit(n, j), shots), n);
    return cal;
  }
  const Eigen::VectorXd zeros = empirical(executor(preparation_circuit(n, 0), shots), n);
  const Eigen::VectorXd ones =
      empirical(executor(preparation_circuit(n, dim - 1), shots), n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Ones(1, 1);
  for (int k = 0; k < n; ++k) {
    double p10 = 0.0, p01 = 0.0;
    for (Index b = 0; b < dim; ++b) {
      if ((b >> k) & 1)
        p10 += zeros(b);
      else
        p01 += ones(b);
    }
    Eigen::MatrixXd ak(2, 2);
    ak << 1.0 - p10, p01, p10, 1.0 - p01;
    a = kron(ak, a);
  }
  cal.matrix = a;
  return cal;
}

CalibrationMatrix analytic_calibration(int n, const NoiseModel& nm,
                                       CalibrationMethod method) {
  nm.validate(n);
  const Index dim = Index{1} << n;
  CalibrationMatrix cal{n, Eigen::MatrixXd::Zero(dim, dim), method, 0};
  for (Index j = 0; j < dim; ++j) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(dim);
    e(j) = 1.0;
    cal.matrix.col(j) = apply_readout_channel(e, nm);
  }
  return cal;
}

CalibrationExecutor sampling_executor(const NoiseModel& nm,
                                      std::uint64_t seed) {
  auto calls = std::make_shared<std::uint64_t>(0);
  return [nm, seed, calls](const Circuit& c, std::uint64_t shots) {
    QuantumState state = nm.has_gate_noise()
                             ? QuantumState(run_density_matrix(c, nm))
                             : QuantumState(run_statevector(c));
    const PauliString z(c.width);
    return measure_term(state, z, shots, derive_seed(seed, (*calls)++), nm);
  };
}

Eigen::VectorXd mitigate_vector(const Eigen::VectorXd& c,
                                const Eigen::MatrixXd& a,
                                MitigationMethod method, bool* regularized) {
  if (a.rows() != c.size() || a.cols() != c.size())
    throw DimensionError("calibration matrix does not match counts");
  if (regularized) *regularized = false;
  const double total = c.sum();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU |
                                               Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const bool singular = sv(sv.size() - 1) <= 1e-12 * std::max(1.0, sv(0));

  if (method == MitigationMethod::PseudoInverse) {
    if (singular) {
      if (regularized) *regularized = true;
      const Index n = a.cols();
      const Eigen::MatrixXd normal =
          a.transpose() * a + 1e-12 * Eigen::MatrixXd::Identity(n, n);
      return normal.ldlt().solve(a.transpose() * c);
    }
    return svd.solve(c);
  }

  // With A column-stochastic the unconstrained solution already preserves
  // the total; it is optimal whenever it is nonnegative.
  if (total <= 0.0) throw ValidationError("counts sum to zero");
  const Eigen::VectorXd target = c / total;
  if (!singular) {
    const Eigen::VectorXd x0 = svd.solve(target);
    if ((x0.array() >= 0.0).all() && std::abs(x0.sum() - 1.0) < 1e-12)
      return x0 * total;
  }

  // Projected gradient on the simplex; strongly convex when A is
  // nonsingular, so the iteration converges linearly.
  const Eigen::MatrixXd ata = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * target;
  const double step = 1.0 / (sv(0) * sv(0));
  Eigen::VectorXd x = project_simplex(
      singular ? Eigen::VectorXd(target) : Eigen::VectorXd(svd.solve(target)),
      1.0);
  for (int it = 0; it < 100000; ++it) {
    const Eigen::VectorXd next = project_simplex(x - step * (ata * x - atb), 1.0);
    const double change = (next - x).lpNorm<Eigen::Infinity>();
    x = next;
    if (change < 1e-14) break;
  }
  return x * total;
}

MitigationResult mitigate(const Counts& counts, const CalibrationMatrix& cal,
                          MitigationMethod method) {
  if (counts.num_qubits != cal.num_qubits)
    throw DimensionError("counts width " + std::to_string(counts.num_qubits) +
                         " != calibration width " +
                         std::to_string(cal.num_qubits));
  MitigationResult r;
  const Eigen::VectorXd x =
      mitigate_vector(counts_vector(counts), cal.matrix, method, &r.regularized);
  for (Index i = 0; i < x.size(); ++i)
    if (x(i) != 0.0) r.quasi[bitstring(i, cal.num_qubits)] = x(i);
  return r;
}

CalibrationSchedule::CalibrationSchedule(Builder builder,
                                         std::optional<std::uint64_t> max_uses,
                                         std::optional<double> max_seconds,
                                         Clock clock)
    : builder_(std::move(builder)),
      max_uses_(max_uses),
      max_seconds_(max_seconds),
      clock_(std::move(clock)) {
  if (!clock_) {
    clock_ = [] {
      using namespace std::chrono;
      return duration<double>(steady_clock::now().time_since_epoch()).count();
    };
  }
}

const CalibrationMatrix& CalibrationSchedule::acquire() {
  bool stale = !current_;
  if (current_ && max_uses_ && uses_ >= *max_uses_) stale = true;
  if (current_ && max_seconds_ && clock_() - built_at_ >= *max_seconds_)
    stale = true;
  if (stale) {
    current_ = builder_();
    built_at_ = clock_();
    uses_ = 0;
    ++rebuilds_;
  }
  ++uses_;
  return *current_;
}

}  // namespace qreact
