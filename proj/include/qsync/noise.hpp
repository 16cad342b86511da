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

#include <span>

#include "qsync/rng.hpp"
#include "qsync/statevec.hpp"

namespace qsync {

/// Parametric device noise. Defaults follow the published characterization
/// of a 5-qubit transmon device: CNOT error below 2 %, single-qubit gates an
/// order of magnitude better, readout error about 1 %.
struct NoiseParams {
  double p_cnot = 0.02;   ///< two-qubit depolarizing probability per CNOT
  double p_1q = 0.002;    ///< single-qubit depolarizing probability per gate
  double p_read0 = 0.01;  ///< P(read 1 | true 0)
  double p_read1 = 0.01;  ///< P(read 0 | true 1)
  /// Optional amplitude damping per Trotter step on each system qubit. Off by
  /// default because gate durations are not known.
  double p_damping = 0.0;
  bool enabled = false;

  static NoiseParams none();
  static NoiseParams device_defaults();

  /// Throws std::invalid_argument if any probability is outside [0, 1].
  void validate() const;

  friend bool operator==(const NoiseParams&, const NoiseParams&) = default;
};

/// Number of CNOTs a gate costs on hardware: a controlled U3 compiles to two.
int cnot_cost(const GateOp& op);

/// Pauli matrix by index 0..3 = I, X, Y, Z.
const Matrix2c& pauli(int index);

/// With probability p applies a uniformly random non-identity Pauli string on
/// the given one or two qubits (3 or 15 choices).
void apply_depolarizing_sample(StateVector& state, std::span<const int> qubits, double p,
                               CounterStream& draws);

/// Flips 0 -> 1 with p_read0 and 1 -> 0 with p_read1.
int apply_readout_flip(int outcome, double p_read0, double p_read1, CounterStream& draws);

/// One quantum-jump sample of amplitude damping |1> -> |0> with probability p.
void apply_amplitude_damping_sample(StateVector& state, int qubit, double p,
                                    CounterStream& draws);

/// Stochastic gate error after `op` (no-op unless noise.enabled).
void apply_gate_noise(StateVector& state, const GateOp& op, const NoiseParams& noise,
                      CounterStream& draws);

// Ensemble-averaged counterparts acting on a 2^n x 2^n density matrix.

void apply_depolarizing_channel(Eigen::MatrixXcd& rho, int n_qubits, std::span<const int> qubits,
                                double p);
void apply_amplitude_damping_channel(Eigen::MatrixXcd& rho, int n_qubits, int qubit, double p);
void apply_gate_noise_channel(Eigen::MatrixXcd& rho, int n_qubits, const GateOp& op,
                              const NoiseParams& noise);

/// Embeds a 2x2 operator acting on `qubit` into the full register.
Eigen::MatrixXcd embed_single_qubit(const Matrix2c& m, int qubit, int n_qubits);

}  // namespace qsync
