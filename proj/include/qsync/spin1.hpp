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
#include <string>
#include <vector>

#include "qsync/statevec.hpp"

namespace qsync {

/// Spin-1 levels plus the surplus two-qubit state |X>.
enum class SpinState { plus, zero, minus, surplus };

/// Parameters of the driven limit-cycle model. Rates and frequencies share
/// one time unit; dt is in that unit.
struct SpinModelParams {
  double delta = 0.0;      ///< detuning
  double epsilon = 0.0;    ///< signal strength
  double gamma_m10 = 0.0;  ///< relaxation rate |-1> -> |0>
  double gamma_10 = 0.0;   ///< relaxation rate |+1> -> |0>
  Complex j_01{};          ///< coefficient of |+1><0|
  Complex j_0m1{};         ///< coefficient of |-1><0|
  Complex j_m11{};         ///< coefficient of |+1><-1| (squeezing)
  double dt = 0.1;

  friend bool operator==(const SpinModelParams&, const SpinModelParams&) = default;
};

/// Two-qubit encoding: |+1> = |1>_q1|0>_q0, |0> = |00>, |-1> = |0>_q1|1>_q0,
/// |X> = |11>.
struct SpinEncoding {
  int q0 = 0;
  int q1 = 1;

  /// Basis index of `s` in a register where q0/q1 sit at the given positions.
  Eigen::Index basis_index(SpinState s) const;
  /// Inverse of basis_index for the two-qubit register (q0 = 0, q1 = 1).
  static SpinState spin_state(int two_qubit_index);
};

/// Two-qubit basis indices of (+1, 0, -1) under the default encoding.
inline constexpr std::array<int, 3> kSpinIndices{2, 0, 1};
inline constexpr int kSurplusIndex = 3;

enum class SignalStyle { controlled, uncontrolled };
enum class DissipationStyle { ccu_circuit_a4, two_cnot_circuit_a5 };

/// oracle_consistent: qubit jump probability 2*Gamma*dt, which reproduces
/// the master equation's |+-1> -> |0> transfer rate 2*Gamma.
/// paper_literal: jump probability Gamma*dt.
enum class JumpConvention { oracle_consistent, paper_literal };

/// symmetric: palindromic splitting, O(dt^3) error per step.
/// first_order: gates in plain left-to-right order, O(dt^2) per step.
enum class TrotterOrder { symmetric, first_order };

struct TrotterVariant {
  SignalStyle signal_style = SignalStyle::controlled;
  DissipationStyle dissipation_style = DissipationStyle::ccu_circuit_a4;
  JumpConvention jump_convention = JumpConvention::oracle_consistent;
  TrotterOrder order = TrotterOrder::symmetric;

  friend bool operator==(const TrotterVariant&, const TrotterVariant&) = default;
};

struct AncillaPair {
  int a1 = 2;  ///< relaxes q1 (rate Gamma_{1,0})
  int a0 = 2;  ///< relaxes q0 (rate Gamma_{-1,0})
};

/// Gamma*dt above this value triggers a warning from validate().
inline constexpr double kRateWarningThreshold = 0.25;

/// Throws std::invalid_argument on negative rates/strength/dt or a jump
/// probability >= 1; returns human-readable warnings otherwise.
std::vector<std::string> validate(const SpinModelParams& params,
                                  JumpConvention convention = JumpConvention::oracle_consistent);

StateVector encode_basis_state(SpinState s, const SpinEncoding& encoding = {}, int n_qubits = 2);

/// Spin-1 operators in the basis order (+1, 0, -1).
Matrix3c spin_z();
Matrix3c spin_plus();
Matrix3c spin_minus();

/// j_01 Sz S+/sqrt2 - j_0m1 Sz S-/sqrt2 + j_m11 S+^2/2 + h.c.
Matrix3c signal_hamiltonian(const SpinModelParams& params);

/// delta*Sz + epsilon*H_signal.
Matrix3c model_hamiltonian(const SpinModelParams& params);

/// Angles realizing exp(-i eps dt (j|1><0| + j*|0><1|)) exactly:
/// theta = -2 eps |j| dt, phi = arg j - 3pi/2, lambda = -arg j - pi/2.
U3Angles signal_gate_params(Complex j, double epsilon, double dt);

/// Rate used by the circuit for a model rate gamma under the convention.
double effective_rate(double gamma, JumpConvention convention);

/// theta = 2 arcsin(sqrt(p)) so that sin^2(theta/2) = p.
double relaxation_angle(double jump_probability);

/// Three controlled gates: exp(-i eps dt (j|+1><-1| + h.c.)) on
/// span{|10>, |01>}, identity on |00> and |11>.
QuantumCircuit build_squeeze_subcircuit(Complex j_m11, double epsilon, double dt,
                                        const SpinEncoding& encoding = {}, int n_qubits = 2);

/// Relaxation |1>_q -> |0>_q with jump probability effective_rate*dt, ending
/// with MeasureReset on the ancilla. Both styles implement the same unitary.
QuantumCircuit build_dissipation_subcircuit(double gamma, double dt, DissipationStyle style,
                                            JumpConvention convention, int system, int ancilla,
                                            int n_qubits, const std::string& label = {});

/// Free evolution + signal (+ squeezing) gates of one Trotter step.
QuantumCircuit build_unitary_step(const SpinModelParams& params, const TrotterVariant& variant,
                                  const SpinEncoding& encoding = {}, int n_qubits = 2);

/// One full Trotter step: unitary part followed by the dissipation
/// subcircuits D_{+1} on (q1, a1) and D_{-1} on (q0, a0).
QuantumCircuit build_trotter_step(const SpinModelParams& params, const TrotterVariant& variant,
                                  const AncillaPair& ancillas = {}, const SpinEncoding& encoding = {},
                                  int n_qubits = 3);

/// Dissipation channels present in a step, in circuit order.
struct DissipationChannel {
  int system;
  double gamma;
  const char* label;
};
std::vector<DissipationChannel> dissipation_channels(const SpinModelParams& params,
                                                     const SpinEncoding& encoding = {});

const char* to_string(SpinState s);
const char* to_string(SignalStyle s);
const char* to_string(DissipationStyle s);
const char* to_string(JumpConvention c);
const char* to_string(TrotterOrder o);

}  // namespace qsync
