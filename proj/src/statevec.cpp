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

#include "qsync/statevec.hpp"

#include <cassert>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qsync {

namespace {

void check_qubit(int q, int n_qubits) {
  if (q < 0 || q >= n_qubits) {
    throw std::out_of_range("qubit index " + std::to_string(q) + " out of range for " +
                            std::to_string(n_qubits) + " qubits");
  }
}

void check_gate(const GateOp& op, int n_qubits) {
  check_qubit(op.target, n_qubits);
  if (op.control) {
    check_qubit(*op.control, n_qubits);
    if (*op.control == op.target) throw std::invalid_argument("control equals target");
  }
  if (op.kind != GateKind::U3 && !op.control) {
    throw std::invalid_argument("controlled gate without a control qubit");
  }
  if (op.kind == GateKind::U3 && op.control) {
    throw std::invalid_argument("plain U3 gate carries a control qubit");
  }
}

}  // namespace

GateOp GateOp::u3(int target, U3Angles angles) {
  return GateOp{GateKind::U3, angles, target, std::nullopt, ControlPolarity::on_one};
}

GateOp GateOp::cnot(int control, int target) {
  return GateOp{GateKind::CNOT, x_angles(), target, control, ControlPolarity::on_one};
}

GateOp GateOp::controlled_u3(int control, int target, U3Angles angles, ControlPolarity polarity) {
  return GateOp{GateKind::ControlledU3, angles, target, control, polarity};
}

Matrix2c GateOp::target_matrix() const {
  if (kind == GateKind::CNOT) {
    Matrix2c x;
    x << 0, 1, 1, 0;
    return x;
  }
  return u3_matrix(angles);
}

QuantumCircuit::QuantumCircuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
}

QuantumCircuit& QuantumCircuit::append(const GateOp& op) {
  check_gate(op, n_qubits_);
  ops_.emplace_back(op);
  return *this;
}

QuantumCircuit& QuantumCircuit::append(const MeasureReset& op) {
  check_qubit(op.target, n_qubits_);
  ops_.emplace_back(op);
  return *this;
}

QuantumCircuit& QuantumCircuit::append(const QuantumCircuit& other) {
  if (other.n_qubits_ > n_qubits_) throw std::invalid_argument("appended circuit is wider");
  for (const auto& op : other.ops_) std::visit([this](const auto& o) { append(o); }, op);
  return *this;
}

std::size_t QuantumCircuit::gate_count() const {
  std::size_t n = 0;
  for (const auto& op : ops_) n += std::holds_alternative<GateOp>(op) ? 1 : 0;
  return n;
}

std::size_t QuantumCircuit::controlled_gate_count() const {
  std::size_t n = 0;
  for (const auto& op : ops_) {
    if (const auto* g = std::get_if<GateOp>(&op); g && g->control) ++n;
  }
  return n;
}

std::string to_text(const QuantumCircuit& circuit) {
  std::ostringstream os;
  os << "# qubits " << circuit.n_qubits() << "\n";
  char buf[160];
  for (const auto& op : circuit.ops()) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      const char* pol = g->polarity == ControlPolarity::on_zero ? "0" : "1";
      switch (g->kind) {
        case GateKind::U3:
          std::snprintf(buf, sizeof buf, "U3 q%d theta=%.12g phi=%.12g lambda=%.12g", g->target,
                        g->angles.theta, g->angles.phi, g->angles.lambda);
          break;
        case GateKind::CNOT:
          std::snprintf(buf, sizeof buf, "CNOT c%d->q%d", *g->control, g->target);
          break;
        case GateKind::ControlledU3:
          std::snprintf(buf, sizeof buf, "CU3 c%d(%s)->q%d theta=%.12g phi=%.12g lambda=%.12g",
                        *g->control, pol, g->target, g->angles.theta, g->angles.phi,
                        g->angles.lambda);
          break;
      }
      os << buf << "\n";
    } else {
      const auto& m = std::get<MeasureReset>(op);
      os << "MEASURE_RESET q" << m.target;
      if (!m.label.empty()) os << " " << m.label;
      os << "\n";
    }
  }
  return os.str();
}

StateVector::StateVector(int n_qubits)
    : n_qubits_(n_qubits), amplitudes_(Eigen::VectorXcd::Zero(Eigen::Index{1} << n_qubits)) {
  if (n_qubits < 0 || n_qubits > 24) throw std::invalid_argument("unsupported qubit count");
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
  if (n_qubits < 0 || n_qubits > 24 || amplitudes_.size() != (Eigen::Index{1} << n_qubits)) {
    throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
  }
}

StateVector StateVector::basis(int n_qubits, Eigen::Index index) {
  StateVector s(n_qubits);
  if (index < 0 || index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  amplitudes_ /= n;
}

double StateVector::probability_one(int target) const {
  check_qubit(target, n_qubits_);
  const Eigen::Index bit = Eigen::Index{1} << target;
  double p = 0.0;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    if (i & bit) p += std::norm(amplitudes_[i]);
  }
  return p;
}

void apply_single_qubit_matrix(StateVector& state, int target, const Matrix2c& m) {
  check_qubit(target, state.n_qubits());
  auto& a = state.amplitudes();
  const Eigen::Index bit = Eigen::Index{1} << target;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (i & bit) continue;
    const Complex a0 = a[i];
    const Complex a1 = a[i | bit];
    a[i] = m(0, 0) * a0 + m(0, 1) * a1;
    a[i | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void apply_gate_inplace(StateVector& state, const GateOp& op) {
  check_gate(op, state.n_qubits());
  const Matrix2c m = op.target_matrix();
  if (!op.control) {
    apply_single_qubit_matrix(state, op.target, m);
    return;
  }
  auto& a = state.amplitudes();
  const Eigen::Index tbit = Eigen::Index{1} << op.target;
  const Eigen::Index cbit = Eigen::Index{1} << *op.control;
  const Eigen::Index fire = op.polarity == ControlPolarity::on_one ? cbit : 0;
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if ((i & tbit) || (i & cbit) != fire) continue;
    const Complex a0 = a[i];
    const Complex a1 = a[i | tbit];
    a[i] = m(0, 0) * a0 + m(0, 1) * a1;
    a[i | tbit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

StateVector apply_gate(StateVector state, const GateOp& op) {
  apply_gate_inplace(state, op);
  return state;
}

int measure_qubit_inplace(StateVector& state, int target, double draw) {
  const double p1 = state.probability_one(target);
  const int outcome = draw < p1 ? 1 : 0;
  const double p = outcome ? p1 : 1.0 - p1;
  assert(p > 0.0 && "selected a zero-probability measurement branch");
  if (p <= 0.0) throw std::logic_error("selected a zero-probability measurement branch");
  const Eigen::Index bit = Eigen::Index{1} << target;
  auto& a = state.amplitudes();
  const double scale = 1.0 / std::sqrt(p);
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    if (((i & bit) != 0) == (outcome == 1)) {
      a[i] *= scale;
    } else {
      a[i] = 0.0;
    }
  }
  return outcome;
}

MeasurementResult measure_qubit(const StateVector& state, int target, double draw) {
  MeasurementResult r{0, state};
  r.outcome = measure_qubit_inplace(r.collapsed, target, draw);
  return r;
}

void reset_after_measurement(StateVector& state, int target, int outcome) {
  if (outcome == 1) apply_gate_inplace(state, GateOp::u3(target, x_angles()));
}

Eigen::MatrixXcd gate_unitary(const GateOp& op, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis(n_qubits, col);
    apply_gate_inplace(s, op);
    u.col(col) = s.amplitudes();
  }
  return u;
}

void run_gates(StateVector& state, const QuantumCircuit& circuit) {
  for (const auto& op : circuit.ops()) {
    const auto* g = std::get_if<GateOp>(&op);
    if (!g) throw std::invalid_argument("run_gates: circuit contains a measurement");
    apply_gate_inplace(state, *g);
  }
}

Eigen::MatrixXcd circuit_unitary(const QuantumCircuit& circuit) {
  const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits();
  Eigen::MatrixXcd u(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    StateVector s = StateVector::basis(circuit.n_qubits(), col);
    run_gates(s, circuit);
    u.col(col) = s.amplitudes();
  }
  return u;
}

}  // namespace qsync
