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

#include "qsync/spin1.hpp"

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qsync {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// One factor of a product formula: a list of gates realizing exp(-i h_k t)
// for an arbitrary time t.
using Factor = std::function<void(QuantumCircuit&, double)>;

void check_jump_probability(double p, const char* what) {
  if (!(p >= 0.0 && p < 1.0)) {
    std::ostringstream os;
    os << what << ": jump probability " << p << " must lie in [0, 1)";
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

Eigen::Index SpinEncoding::basis_index(SpinState s) const {
  const auto bits = [this](int b1, int b0) {
    return (Eigen::Index{b1} << q1) | (Eigen::Index{b0} << q0);
  };
  switch (s) {
    case SpinState::plus:
      return bits(1, 0);
    case SpinState::zero:
      return bits(0, 0);
    case SpinState::minus:
      return bits(0, 1);
    case SpinState::surplus:
      return bits(1, 1);
  }
  return 0;
}

SpinState SpinEncoding::spin_state(int two_qubit_index) {
  switch (two_qubit_index) {
    case 0:
      return SpinState::zero;
    case 1:
      return SpinState::minus;
    case 2:
      return SpinState::plus;
    case 3:
      return SpinState::surplus;
  }
  throw std::out_of_range("two-qubit index must be 0..3");
}

std::vector<std::string> validate(const SpinModelParams& p, JumpConvention convention) {
  if (p.epsilon < 0 || p.gamma_10 < 0 || p.gamma_m10 < 0 || p.dt < 0) {
    throw std::invalid_argument("epsilon, rates and dt must be non-negative");
  }
  std::vector<std::string> warnings;
  for (auto [gamma, name] : {std::pair{p.gamma_10, "Gamma_{1,0}"}, {p.gamma_m10, "Gamma_{-1,0}"}}) {
    check_jump_probability(effective_rate(gamma, convention) * p.dt, name);
    if (gamma * p.dt > kRateWarningThreshold) {
      std::ostringstream os;
      os << name << "*dt = " << gamma * p.dt << " exceeds " << kRateWarningThreshold
         << "; the jump unraveling assumes Gamma*dt << 1";
      warnings.push_back(os.str());
    }
  }
  return warnings;
}

StateVector encode_basis_state(SpinState s, const SpinEncoding& encoding, int n_qubits) {
  return StateVector::basis(n_qubits, encoding.basis_index(s));
}

Matrix3c spin_z() {
  return Eigen::Vector3cd(1, 0, -1).asDiagonal();
}

Matrix3c spin_plus() {
  Matrix3c s = Matrix3c::Zero();
  s(0, 1) = kSqrt2;
  s(1, 2) = kSqrt2;
  return s;
}

Matrix3c spin_minus() { return spin_plus().adjoint(); }

Matrix3c signal_hamiltonian(const SpinModelParams& p) {
  const Matrix3c sz = spin_z();
  const Matrix3c sp = spin_plus();
  const Matrix3c sm = spin_minus();
  const Matrix3c h = p.j_01 * sz * sp / kSqrt2 - p.j_0m1 * sz * sm / kSqrt2 + p.j_m11 * sp * sp / 2.0;
  return h + h.adjoint();
}

Matrix3c model_hamiltonian(const SpinModelParams& p) {
  return p.delta * spin_z() + p.epsilon * signal_hamiltonian(p);
}

U3Angles signal_gate_params(Complex j, double epsilon, double dt) {
  const double arg = std::arg(j);
  return {-2.0 * epsilon * std::abs(j) * dt, arg - 1.5 * kPi, -arg - 0.5 * kPi};
}

double effective_rate(double gamma, JumpConvention convention) {
  return convention == JumpConvention::oracle_consistent ? 2.0 * gamma : gamma;
}

double relaxation_angle(double jump_probability) {
  check_jump_probability(jump_probability, "relaxation_angle");
  return 2.0 * std::asin(std::sqrt(jump_probability));
}

QuantumCircuit build_squeeze_subcircuit(Complex j_m11, double epsilon, double dt,
                                        const SpinEncoding& enc, int n_qubits) {
  QuantumCircuit c(n_qubits);
  // Map |+1> = |10> onto |11> so that |+1>, |-1> differ only in q1, rotate
  // q1 inside the q0 = 1 sector, then map back.
  c.append(GateOp::cnot(enc.q1, enc.q0));
  c.append(GateOp::controlled_u3(enc.q0, enc.q1, signal_gate_params(j_m11, epsilon, dt),
                                 ControlPolarity::on_one));
  c.append(GateOp::cnot(enc.q1, enc.q0));
  return c;
}

QuantumCircuit build_dissipation_subcircuit(double gamma, double dt, DissipationStyle style,
                                            JumpConvention convention, int system, int ancilla,
                                            int n_qubits, const std::string& label) {
  if (system == ancilla) throw std::invalid_argument("system and ancilla must differ");
  const double theta = relaxation_angle(effective_rate(gamma, convention) * dt);
  QuantumCircuit c(n_qubits);
  if (style == DissipationStyle::ccu_circuit_a4) {
    c.append(GateOp::controlled_u3(system, ancilla, {theta, 0.0, 0.0}, ControlPolarity::on_one));
    c.append(GateOp::cnot(ancilla, system));
  } else {
    c.append(GateOp::u3(system, u2_angles(-kPi, 0.0)));
    c.append(GateOp::u3(ancilla, {-theta / 2, -kPi / 2, kPi}));
    c.append(GateOp::cnot(ancilla, system));
    c.append(GateOp::u3(system, u2_angles(-kPi / 2, 0.0)));
    c.append(GateOp::u3(ancilla, {-theta / 2, kPi, kPi / 2}));
    c.append(GateOp::cnot(ancilla, system));
    c.append(GateOp::u3(system, u1_angles(-kPi / 2)));
    c.append(GateOp::u3(ancilla, u1_angles(-kPi / 2)));
  }
  c.append(MeasureReset{ancilla, label});
  return c;
}

QuantumCircuit build_unitary_step(const SpinModelParams& p, const TrotterVariant& variant,
                                  const SpinEncoding& enc, int n_qubits) {
  const bool controlled = variant.signal_style == SignalStyle::controlled;

  // Sz = n_q1 - n_q0 in the encoding, so exp(-i delta Sz t) is a pair of
  // phase gates.
  const Factor free = [&](QuantumCircuit& c, double t) {
    if (p.delta == 0.0) return;
    c.append(GateOp::u3(enc.q1, u1_angles(-p.delta * t)));
    c.append(GateOp::u3(enc.q0, u1_angles(p.delta * t)));
  };
  const auto drive = [&](Complex j, int target, int control) -> Factor {
    return [=, &p](QuantumCircuit& c, double t) {
      const U3Angles a = signal_gate_params(j, p.epsilon, t);
      if (controlled) {
        c.append(GateOp::controlled_u3(control, target, a, ControlPolarity::on_zero));
      } else {
        c.append(GateOp::u3(target, a));
      }
    };
  };
  const bool has_plus = p.epsilon * std::abs(p.j_01) != 0.0;
  const bool has_minus = p.epsilon * std::abs(p.j_0m1) != 0.0;
  const bool has_squeeze = p.epsilon * std::abs(p.j_m11) != 0.0;

  std::vector<Factor> signal;
  if (controlled) {
    if (has_plus) signal.push_back(drive(p.j_01, enc.q1, enc.q0));
    if (has_minus) signal.push_back(drive(p.j_0m1, enc.q0, enc.q1));
  } else if (has_plus || has_minus) {
    // Uncontrolled drives act on different qubits and commute: one factor.
    const Factor plus = drive(p.j_01, enc.q1, enc.q0);
    const Factor minus = drive(p.j_0m1, enc.q0, enc.q1);
    signal.push_back([=](QuantumCircuit& c, double t) {
      if (has_plus) plus(c, t);
      if (has_minus) minus(c, t);
    });
  }
  if (has_squeeze) {
    signal.push_back([&](QuantumCircuit& c, double t) {
      c.append(build_squeeze_subcircuit(p.j_m11, p.epsilon, t, enc, c.n_qubits()));
    });
  }

  QuantumCircuit c(n_qubits);
  if (variant.order == TrotterOrder::first_order) {
    free(c, p.dt);
    for (const auto& f : signal) f(c, p.dt);
    return c;
  }
  std::vector<Factor> factors{free};
  factors.insert(factors.end(), signal.begin(), signal.end());
  // Palindrome: f1/2 f2/2 ... f_{n-1}/2 f_n f_{n-1}/2 ... f1/2.
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) factors[i](c, p.dt / 2);
  factors.back()(c, p.dt);
  for (std::size_t i = factors.size() - 1; i-- > 0;) factors[i](c, p.dt / 2);
  return c;
}

std::vector<DissipationChannel> dissipation_channels(const SpinModelParams& p,
                                                     const SpinEncoding& enc) {
  std::vector<DissipationChannel> out;
  if (p.gamma_10 > 0.0) out.push_back({enc.q1, p.gamma_10, "D+1"});
  if (p.gamma_m10 > 0.0) out.push_back({enc.q0, p.gamma_m10, "D-1"});
  return out;
}

QuantumCircuit build_trotter_step(const SpinModelParams& p, const TrotterVariant& variant,
                                  const AncillaPair& anc, const SpinEncoding& enc, int n_qubits) {
  for (int a : {anc.a0, anc.a1}) {
    if (a == enc.q0 || a == enc.q1) throw std::invalid_argument("ancilla overlaps a system qubit");
  }
  validate(p, variant.jump_convention);
  QuantumCircuit c(n_qubits);
  c.append(build_unitary_step(p, variant, enc, n_qubits));
  for (const auto& ch : dissipation_channels(p, enc)) {
    const int ancilla = ch.system == enc.q1 ? anc.a1 : anc.a0;
    c.append(build_dissipation_subcircuit(ch.gamma, p.dt, variant.dissipation_style,
                                          variant.jump_convention, ch.system, ancilla, n_qubits,
                                          ch.label));
  }
  return c;
}

const char* to_string(SpinState s) {
  switch (s) {
    case SpinState::plus:
      return "+1";
    case SpinState::zero:
      return "0";
    case SpinState::minus:
      return "-1";
    case SpinState::surplus:
      return "X";
  }
  return "?";
}

const char* to_string(SignalStyle s) {
  return s == SignalStyle::controlled ? "controlled" : "uncontrolled";
}

const char* to_string(DissipationStyle s) {
  return s == DissipationStyle::ccu_circuit_a4 ? "ccu_circuit_a4" : "two_cnot_circuit_a5";
}

const char* to_string(JumpConvention c) {
  return c == JumpConvention::oracle_consistent ? "oracle-consistent" : "paper-literal";
}

const char* to_string(TrotterOrder o) {
  return o == TrotterOrder::symmetric ? "symmetric" : "first-order";
}

}  // namespace qsync
