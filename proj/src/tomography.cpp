// Copyright 2026 The qsync Authors
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

#include "qsync/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qsync/trajectory.hpp"

namespace qsync {

const char* to_string(PauliBasis b) {
  switch (b) {
    case PauliBasis::X:
      return "X";
    case PauliBasis::Y:
      return "Y";
    case PauliBasis::Z:
      return "Z";
  }
  return "?";
}

PauliBasis parse_basis(const std::string& text) {
  if (text == "X") return PauliBasis::X;
  if (text == "Y") return PauliBasis::Y;
  if (text == "Z") return PauliBasis::Z;
  throw std::invalid_argument("unknown basis '" + text + "'");
}

long CountsTable::count(int outcome) const {
  const auto it = counts.find(outcome);
  return it == counts.end() ? 0 : it->second;
}

void CountsTable::validate() const {
  long total = 0;
  for (const auto& [outcome, n] : counts) {
    if (n < 0) throw std::invalid_argument("negative count");
    if (outcome < 0) throw std::invalid_argument("negative outcome");
    total += n;
  }
  if (total != shots) throw std::invalid_argument("counts do not sum to shots");
}

std::array<QuantumCircuit, 3> tomography_circuits(int target, int n_qubits) {
  std::array<QuantumCircuit, 3> out{QuantumCircuit(n_qubits), QuantumCircuit(n_qubits),
                                    QuantumCircuit(n_qubits)};
  // H maps X eigenstates onto Z
  out[0].append(GateOp::u3(target, {kPi / 2, 0.0, kPi}));
  // S^dagger then H for Y
  out[1].append(GateOp::u3(target, u1_angles(-kPi / 2)));
  out[1].append(GateOp::u3(target, u2_angles(0.0, kPi)));
  return out;
}

PauliEstimate estimate_pauli_expectation(const CountsTable& table) {
  if (table.shots <= 0) throw std::invalid_argument("empty counts table");
  table.validate();
  const double n = static_cast<double>(table.shots);
  const double value = static_cast<double>(table.count(0) - table.count(1)) / n;
  return {value, std::sqrt(std::max(0.0, 1.0 - value * value) / n)};
}

std::array<PauliEstimate, 3> estimate_pauli_expectations(const std::array<CountsTable, 3>& tables) {
  std::array<PauliEstimate, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = estimate_pauli_expectation(tables[i]);
  return out;
}

Matrix2c reconstruct_single_qubit(const std::array<double, 3>& b) {
  Matrix2c rho = Matrix2c::Identity();
  for (int i = 0; i < 3; ++i) rho += b[i] * pauli(i + 1);
  rho /= 2.0;
  if (b[0] * b[0] + b[1] * b[1] + b[2] * b[2] > 1.0) rho = ml_project(rho);
  return rho;
}

Matrix2c reconstruct_single_qubit(const std::array<PauliEstimate, 3>& e) {
  return reconstruct_single_qubit(std::array<double, 3>{e[0].value, e[1].value, e[2].value});
}

Eigen::MatrixXcd ml_project(const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd h = hermitian_part(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  // ascending eigenvalues
  Eigen::VectorXd lam = solver.eigenvalues();
  const Eigen::Index d = lam.size();
  double deficit = 0.0;
  Eigen::Index k = 0;  // lam[0..k) zeroed
  while (k < d && lam[k] + deficit / static_cast<double>(d - k) < 0.0) {
    deficit += lam[k];
    lam[k] = 0.0;
    ++k;
  }
  for (Eigen::Index i = k; i < d; ++i) lam[i] += deficit / static_cast<double>(d - k);
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return hermitian_part((v * lam.cast<Complex>().asDiagonal() * v.adjoint()).eval());
}

void CalibrationMatrix::validate() const {
  if (m.rows() != m.cols() || m.rows() == 0) throw std::invalid_argument("calibration not square");
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (std::abs(m.col(c).sum() - 1.0) > 1e-12) {
      throw std::invalid_argument("calibration column does not sum to 1");
    }
  }
  if (m.minCoeff() < 0.0 || m.maxCoeff() > 1.0) throw std::invalid_argument("calibration entry outside [0,1]");
}

CalibrationMatrix exact_calibration(const NoiseParams& noise) {
  noise.validate();
  const double r0 = noise.enabled ? noise.p_read0 : 0.0;
  const double r1 = noise.enabled ? noise.p_read1 : 0.0;
  CalibrationMatrix cal;
  cal.m.resize(2, 2);
  cal.m << 1.0 - r0, r1, r0, 1.0 - r1;
  return cal;
}

CalibrationMatrix build_calibration(const NoiseParams& noise, long shots, std::uint64_t seed) {
  if (shots <= 0) throw std::invalid_argument("build_calibration: shots must be positive");
  noise.validate();
  CalibrationMatrix cal;
  cal.m = Eigen::MatrixXd::Zero(2, 2);
  for (int prepared = 0; prepared < 2; ++prepared) {
    CounterStream draws(seed, static_cast<std::uint64_t>(prepared), 0, StreamChannel::calibration);
    long ones = 0;
    for (long s = 0; s < shots; ++s) {
      int read = prepared;
      if (noise.enabled) read = apply_readout_flip(prepared, noise.p_read0, noise.p_read1, draws);
      ones += read;
    }
    cal.m(1, prepared) = static_cast<double>(ones) / static_cast<double>(shots);
    cal.m(0, prepared) = 1.0 - cal.m(1, prepared);
  }
  return cal;
}

CalibrationMatrix tensor(const CalibrationMatrix& high, const CalibrationMatrix& low) {
  const Eigen::Index a = high.m.rows(), b = low.m.rows();
  CalibrationMatrix out;
  out.m.resize(a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) out.m.block(i * b, j * b, b, b) = high.m(i, j) * low.m;
  }
  return out;
}

MitigationResult mitigate_probabilities(const Eigen::VectorXd& raw, const CalibrationMatrix& cal) {
  const Eigen::Index d = cal.m.rows();
  if (raw.size() != d) throw std::invalid_argument("mitigate: size mismatch");
  if (d > 4) throw std::invalid_argument("mitigate: at most 4 outcomes supported");
  MitigationResult best;
  double best_obj = std::numeric_limits<double>::infinity();
  // enumerate supports; the optimum's equality-constrained solution is feasible
  for (unsigned mask = 1; mask < (1u << d); ++mask) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < d; ++i) {
      if (mask & (1u << i)) support.push_back(i);
    }
    const auto k = static_cast<Eigen::Index>(support.size());
    Eigen::MatrixXd a(d, k);
    for (Eigen::Index c = 0; c < k; ++c) a.col(c) = cal.m.col(support[c]);
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(k + 1, k + 1);
    kkt.topLeftCorner(k, k) = 2.0 * a.transpose() * a;
    kkt.topRightCorner(k, 1).setOnes();
    kkt.bottomLeftCorner(1, k).setOnes();
    Eigen::VectorXd rhs(k + 1);
    rhs.head(k) = 2.0 * a.transpose() * raw;
    rhs[k] = 1.0;
    const Eigen::VectorXd sol = kkt.completeOrthogonalDecomposition().solve(rhs);
    const Eigen::VectorXd ps = sol.head(k);
    if (ps.minCoeff() < -1e-14 || std::abs(ps.sum() - 1.0) > 1e-9) continue;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    for (Eigen::Index c = 0; c < k; ++c) p[support[c]] = std::max(0.0, ps[c]);
    p /= p.sum();
    const double obj = (cal.m * p - raw).squaredNorm();
    if (obj < best_obj - 1e-15) {
      best_obj = obj;
      best.probabilities = p;
    }
  }
  if (best.probabilities.size() == 0) throw std::runtime_error("mitigate: no feasible solution");
  best.residual = std::sqrt(best_obj);
  return best;
}

MitigationResult mitigate_counts(const CountsTable& raw, const CalibrationMatrix& cal) {
  raw.validate();
  if (raw.shots <= 0) throw std::invalid_argument("mitigate: empty counts table");
  Eigen::VectorXd p = Eigen::VectorXd::Zero(cal.m.rows());
  for (const auto& [outcome, n] : raw.counts) {
    if (outcome >= p.size()) throw std::invalid_argument("mitigate: outcome outside calibration");
    p[outcome] = static_cast<double>(n) / static_cast<double>(raw.shots);
  }
  return mitigate_probabilities(p, cal);
}

Matrix3c assemble_spin1_density(const Matrix2c& rho_q1, const Matrix2c& rho_q0) {
  check_density_matrix(rho_q1, 1e-10, 1e-10);
  check_density_matrix(rho_q0, 1e-10, 1e-10);
  DensityMatrix full(4, 4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) full(i, j) = rho_q1(i / 2, j / 2) * rho_q0(i % 2, j % 2);
  }
  return ensemble_density_matrix(full).rho;
}

CountsTable simulate_counts(const StateVector& state, int target, PauliBasis basis, long shots,
                            const NoiseParams& noise, std::uint64_t seed, std::uint64_t index) {
  if (shots <= 0) throw std::invalid_argument("simulate_counts: shots must be positive");
  StateVector rotated = state;
  run_gates(rotated, tomography_circuits(target, state.n_qubits())[static_cast<int>(basis)]);
  const double p1 = rotated.probability_one(target);
  CounterStream draws(seed, index, static_cast<std::uint32_t>(basis), StreamChannel::tomography);
  CountsTable table{basis, shots, {{0, 0}, {1, 0}}};
  for (long s = 0; s < shots; ++s) {
    int outcome = draws.uniform() < p1 ? 1 : 0;
    if (noise.enabled) outcome = apply_readout_flip(outcome, noise.p_read0, noise.p_read1, draws);
    ++table.counts[outcome];
  }
  return table;
}

std::array<CountsTable, 3> simulate_tomography(const StateVector& state, int target, long shots,
                                               const NoiseParams& noise, std::uint64_t seed,
                                               std::uint64_t index) {
  std::array<CountsTable, 3> out;
  for (int b = 0; b < 3; ++b) {
    out[b] = simulate_counts(state, target, static_cast<PauliBasis>(b), shots, noise, seed, index);
  }
  return out;
}

void write_counts(std::ostream& out, const std::vector<CountsTable>& tables) {
  out << "basis,outcome,count\n";
  for (const auto& t : tables) {
    t.validate();
    for (const auto& [outcome, n] : t.counts) out << to_string(t.basis) << ',' << outcome << ',' << n << '\n';
  }
}

std::vector<CountsTable> read_counts(std::istream& in) {
  std::vector<CountsTable> tables;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#' || line == "basis,outcome,count") continue;
    std::stringstream ss(line);
    std::string basis, outcome, count;
    if (!std::getline(ss, basis, ',') || !std::getline(ss, outcome, ',') || !std::getline(ss, count)) {
      throw std::invalid_argument("counts line " + std::to_string(line_no) + ": expected basis,outcome,count");
    }
    const PauliBasis b = parse_basis(basis);
    long n = 0;
    int o = 0;
    try {
      o = std::stoi(outcome);
      n = std::stol(count);
    } catch (const std::exception&) {
      throw std::invalid_argument("counts line " + std::to_string(line_no) + ": bad number");
    }
    if (n < 0 || o < 0) throw std::invalid_argument("counts line " + std::to_string(line_no) + ": negative value");
    // consecutive lines with the same basis belong to one table
    if (tables.empty() || tables.back().basis != b || tables.back().counts.contains(o)) {
      tables.push_back({b, 0, {}});
    }
    tables.back().counts[o] = n;
    tables.back().shots += n;
  }
  return tables;
}

}  // namespace qsync
