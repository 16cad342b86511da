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

#include <vector>

#include "qsync/noise.hpp"
#include "qsync/statevec.hpp"

namespace qsync {

/// Applies a circuit to a 2^n x 2^n density matrix. Gates act by conjugation
/// (followed by their averaged noise channel when noise.enabled); a
/// MeasureReset is the non-selective measure-and-reset channel. The result
/// is the infinite-shot limit of the trajectory engine.
void run_circuit_density(Eigen::MatrixXcd& rho, const QuantumCircuit& circuit,
                         const NoiseParams& noise = NoiseParams::none());

/// Non-selective measurement of `qubit` followed by reset to |0>.
void apply_measure_reset_channel(Eigen::MatrixXcd& rho, int n_qubits, int qubit);

/// Partial trace keeping `keep` (ascending order of significance: keep[0]
/// becomes bit 0 of the reduced register).
Eigen::MatrixXcd reduced_density(const Eigen::MatrixXcd& rho, int n_qubits,
                                 const std::vector<int>& keep);

/// rho (on the low qubits) tensored with |0...0><0...0| on `extra` new
/// high qubits.
Eigen::MatrixXcd extend_with_zeros(const Eigen::MatrixXcd& rho, int extra);

}  // namespace qsync
