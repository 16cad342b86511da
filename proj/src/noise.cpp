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

#include "qsync/noise.hpp"

#include <array>
#include <stdexcept>

namespace qsync {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
  }
}

int pick_index(double u, int n) {
  const int k = static_cast<int>(u * n);
  return k < n ? k : n - 1;
}

// Pauli string index 1..(4^k - 1); digit i (base 4) acts on qubits[i].
void apply_pauli_string(StateVector& state, std::span<const int> qubits, int string_index) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    const int digit = (string_index >> (2 * i)) & 3;
    if (digit != 0) apply_single_qubit_matrix(state, qubits[i], pauli(digit));
  }
}

}  // namespace

NoiseParams NoiseParams::none() {
  return NoiseParams{0.0, 0.0, 0.0, 0.0, 0.0, false};
}

NoiseParams NoiseParams::device_defaults() {
  NoiseParams n;
  n.enabled = true;
  return n;
}

void NoiseParams::validate() const {
  check_probability(p_cnot, "p_cnot");
  check_probability(p_1q, "p_1q");
  check_probability(p_read0, "p_read0");
  check_probability(p_read1, "p_read1");
  check_probability(p_damping, "p_damping");
}

int cnot_cost(const GateOp& op) {
  switch (op.kind) {
    case GateKind::U3:
      return 0;
    case GateKind::CNOT:
      return 1;
    case GateKind::ControlledU3:
      return 2;
  }
  return 0;
}

const Matrix2c& pauli(int index) {
  static const std::array<Matrix2c, 4> paulis = [] {
    std::array<Matrix2c, 4> p;
    p[0] << 1, 0, 0, 1;
    p[1] << 0, 1, 1, 0;
    p[2] << 0, -kI, kI, 0;
    p[3] << 1, 0, 0, -1;
    return p;
  }();
  return paulis.at(static_cast<std::size_t>(index));
}

void apply_depolarizing_sample(StateVector& state, std::span<const int> qubits, double p,
                               CounterStream& draws) {
  if (qubits.empty() || qubits.size() > 2) {
    throw std::invalid_argument("depolarizing acts on one or two qubits");
  }
  check_probability(p, "depolarizing probability");
  if (p == 0.0) return;
  if (draws.uniform() >= p) return;
  const int choices = qubits.size() == 1 ? 3 : 15;
  apply_pauli_string(state, qubits, 1 + pick_index(draws.uniform(), choices));
}

int apply_readout_flip(int outcome, double p_read0, double p_read1, CounterStream& draws) {
  // always consume one draw so stream positions do not depend on outcomes
  const double u = draws.uniform();
  const double p = outcome == 0 ? p_read0 : p_read1;
  return u < p ? 1 - outcome : outcome;
}

void apply_amplitude_damping_sample(StateVector& state, int qubit, double p,
                                    CounterStream& draws) {
  check_probability(p, "damping probability");
  if (p == 0.0) return;
  const double jump = p * state.probability_one(qubit);
  Matrix2c k;
  if (draws.uniform() < jump) {
    k << 0, std::sqrt(p), 0, 0;
  } else {
    k << 1, 0, 0, std::sqrt(1.0 - p);
  }
  apply_single_qubit_matrix(state, qubit, k);
  state.normalize();
}

void apply_gate_noise(StateVector& state, const GateOp& op, const NoiseParams& noise,
                      CounterStream& draws) {
  if (!noise.enabled) return;
  if (!op.control) {
    const std::array<int, 1> q{op.target};
    apply_depolarizing_sample(state, q, noise.p_1q, draws);
    return;
  }
  const std::array<int, 2> q{*op.control, op.target};
  for (int i = 0; i < cnot_cost(op); ++i) apply_depolarizing_sample(state, q, noise.p_cnot, draws);
}

Eigen::MatrixXcd embed_single_qubit(const Matrix2c& m, int qubit, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  const Eigen::Index bit = Eigen::Index{1} << qubit;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const int b = (col & bit) ? 1 : 0;
    const Eigen::Index base = col & ~bit;
    out(base, col) += m(0, b);
    out(base | bit, col) += m(1, b);
  }
  return out;
}

void apply_depolarizing_channel(Eigen::MatrixXcd& rho, int n_qubits, std::span<const int> qubits,
                                double p) {
  if (qubits.empty() || qubits.size() > 2) {
    throw std::invalid_argument("depolarizing acts on one or two qubits");
  }
  check_probability(p, "depolarizing probability");
  if (p == 0.0) return;
  const int choices = qubits.size() == 1 ? 3 : 15;
  Eigen::MatrixXcd twirled = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
  for (int s = 1; s <= choices; ++s) {
    Eigen::MatrixXcd op = Eigen::MatrixXcd::Identity(rho.rows(), rho.cols());
    for (std::size_t i = 0; i < qubits.size(); ++i) {
      const int digit = (s >> (2 * i)) & 3;
      if (digit != 0) op = embed_single_qubit(pauli(digit), qubits[i], n_qubits) * op;
    }
    twirled += op * rho * op.adjoint();
  }
  rho = (1.0 - p) * rho + (p / choices) * twirled;
}

void apply_amplitude_damping_channel(Eigen::MatrixXcd& rho, int n_qubits, int qubit, double p) {
  check_probability(p, "damping probability");
  if (p == 0.0) return;
  Matrix2c k0, k1;
  k0 << 1, 0, 0, std::sqrt(1.0 - p);
  k1 << 0, std::sqrt(p), 0, 0;
  const Eigen::MatrixXcd e0 = embed_single_qubit(k0, qubit, n_qubits);
  const Eigen::MatrixXcd e1 = embed_single_qubit(k1, qubit, n_qubits);
  rho = e0 * rho * e0.adjoint() + e1 * rho * e1.adjoint();
}

void apply_gate_noise_channel(Eigen::MatrixXcd& rho, int n_qubits, const GateOp& op,
                              const NoiseParams& noise) {
  if (!noise.enabled) return;
  if (!op.control) {
    const std::array<int, 1> q{op.target};
    apply_depolarizing_channel(rho, n_qubits, q, noise.p_1q);
    return;
  }
  const std::array<int, 2> q{*op.control, op.target};
  for (int i = 0; i < cnot_cost(op); ++i) apply_depolarizing_channel(rho, n_qubits, q, noise.p_cnot);
}

}  // namespace qsync
