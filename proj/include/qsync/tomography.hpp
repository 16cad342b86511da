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

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <vector>

#include "qsync/noise.hpp"

namespace qsync {

enum class PauliBasis { X, Y, Z };

const char* to_string(PauliBasis b);
PauliBasis parse_basis(const std::string& text);

struct CountsTable {
  PauliBasis basis = PauliBasis::Z;
  long shots = 0;
  std::map<int, long> counts;  ///< outcome -> count

  long count(int outcome) const;
  /// Throws std::invalid_argument unless counts are nonnegative and sum to shots.
  void validate() const;

  friend bool operator==(const CountsTable&, const CountsTable&) = default;
};

/// Pre-measurement rotations for X, Y, Z (in that order) on `target`.
std::array<QuantumCircuit, 3> tomography_circuits(int target, int n_qubits = 1);

struct PauliEstimate {
  double value = 0.0;
  double standard_error = 0.0;
};

/// <P> = (n0 - n1)/shots, error sqrt((1 - <P>^2)/shots). Throws on an empty table.
PauliEstimate estimate_pauli_expectation(const CountsTable& table);
/// Tables in X, Y, Z order.
std::array<PauliEstimate, 3> estimate_pauli_expectations(const std::array<CountsTable, 3>& tables);

/// Linear inversion, then ml_project if the Bloch vector is longer than 1.
Matrix2c reconstruct_single_qubit(const std::array<double, 3>& bloch);
Matrix2c reconstruct_single_qubit(const std::array<PauliEstimate, 3>& estimates);

/// Closest density matrix in Frobenius norm to a Hermitian trace-1 input
/// (eigenvalue truncation with equal redistribution of the deficit).
Eigen::MatrixXcd ml_project(const Eigen::MatrixXcd& rho_candidate);

struct CalibrationMatrix {
  /// m(i, j) = P(read i | prepared j); column stochastic.
  Eigen::MatrixXd m;

  void validate() const;
};

/// Infinite-shot confusion matrix of the readout-flip channel.
CalibrationMatrix exact_calibration(const NoiseParams& noise);
/// Tabulated from `shots` simulated runs of each calibration circuit
/// (prepare |0>, prepare |1>). Readout is noiseless when noise is disabled.
CalibrationMatrix build_calibration(const NoiseParams& noise, long shots, std::uint64_t seed = 0);
/// Two-qubit confusion matrix for independent readout, basis index q1*2 + q0.
CalibrationMatrix tensor(const CalibrationMatrix& high, const CalibrationMatrix& low);

struct MitigationResult {
  Eigen::VectorXd probabilities;
  double residual = 0.0;  ///< ||M p - p_raw||_2 at the optimum
};

/// min ||M p - p_raw||^2 subject to p >= 0, sum p = 1 (dimension <= 4).
MitigationResult mitigate_probabilities(const Eigen::VectorXd& raw, const CalibrationMatrix& cal);
MitigationResult mitigate_counts(const CountsTable& raw, const CalibrationMatrix& cal);

/// Spin block of rho_q1 (x) rho_q0, renormalized. rho_{+1,-1} is implied by
/// the product ansatz, not measured. Throws std::domain_error if rho_XX ~ 1.
Matrix3c assemble_spin1_density(const Matrix2c& rho_q1, const Matrix2c& rho_q0);

/// Samples `shots` Z-basis readings of `target` after the basis rotation.
/// Draws come from the tomography stream (seed, index, basis).
CountsTable simulate_counts(const StateVector& state, int target, PauliBasis basis, long shots,
                            const NoiseParams& noise, std::uint64_t seed, std::uint64_t index = 0);

/// X, Y, Z tables for one qubit.
std::array<CountsTable, 3> simulate_tomography(const StateVector& state, int target, long shots,
                                               const NoiseParams& noise, std::uint64_t seed,
                                               std::uint64_t index = 0);

/// Line format `basis,outcome,count` with a header line.
void write_counts(std::ostream& out, const std::vector<CountsTable>& tables);
std::vector<CountsTable> read_counts(std::istream& in);

}  // namespace qsync
