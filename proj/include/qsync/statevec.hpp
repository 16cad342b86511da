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

#include <cmath>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsync/types.hpp"

namespace qsync {

/// U3 rotation angles in radians.
struct U3Angles {
  double theta = 0.0;
  double phi = 0.0;
  double lambda = 0.0;

  friend bool operator==(const U3Angles&, const U3Angles&) = default;
};

/// Angles of the inverse rotation: U3(t, p, l)^-1 = U3(-t, -l, -p).
constexpr U3Angles inverse(const U3Angles& a) { return {-a.theta, -a.lambda, -a.phi}; }

/// The U3 gate, columns are the images of |0> and |1>:
///   U3|0> = cos(t/2)|0> + e^{ip} sin(t/2)|1>
///   U3|1> = -e^{il} sin(t/2)|0> + e^{i(l+p)} cos(t/2)|1>
/// Global phases are kept exactly as written.
template <typename Scalar>
ComplexMatrix<Scalar, 2> u3_matrix(Scalar theta, Scalar phi, Scalar lambda) {
  using std::cos;
  using std::sin;
  const Scalar c = cos(theta / Scalar(2));
  const Scalar s = sin(theta / Scalar(2));
  const auto e = [](Scalar angle) { return std::polar(Scalar(1), angle); };
  ComplexMatrix<Scalar, 2> u;
  u << c, -e(lambda) * s,  //
      e(phi) * s, e(lambda + phi) * c;
  return u;
}

inline Matrix2c u3_matrix(const U3Angles& a) { return u3_matrix(a.theta, a.phi, a.lambda); }

/// U1(lambda) = U3(0, 0, lambda), the phase gate.
constexpr U3Angles u1_angles(double lambda) { return {0.0, 0.0, lambda}; }
/// U2(phi, lambda) = U3(pi/2, phi, lambda).
constexpr U3Angles u2_angles(double phi, double lambda) { return {kPi / 2, phi, lambda}; }
/// Pauli X as U3(pi, 0, pi).
constexpr U3Angles x_angles() { return {kPi, 0.0, kPi}; }

enum class GateKind { U3, CNOT, ControlledU3 };

/// Open circles (on_zero) fire when the control is |0>, solid ones (on_one) on |1>.
enum class ControlPolarity { on_zero, on_one };

struct GateOp {
  GateKind kind = GateKind::U3;
  U3Angles angles{};
  int target = 0;
  std::optional<int> control;
  ControlPolarity polarity = ControlPolarity::on_one;

  static GateOp u3(int target, U3Angles angles);
  static GateOp cnot(int control, int target);
  static GateOp controlled_u3(int control, int target, U3Angles angles,
                              ControlPolarity polarity = ControlPolarity::on_one);

  /// 2x2 matrix applied to the target when the gate fires.
  Matrix2c target_matrix() const;
  int arity() const { return control ? 2 : 1; }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// Projective Z measurement of `target` followed by reset to |0>.
struct MeasureReset {
  int target = 0;
  std::string label;

  friend bool operator==(const MeasureReset&, const MeasureReset&) = default;
};

using CircuitOp = std::variant<GateOp, MeasureReset>;

class QuantumCircuit {
 public:
  explicit QuantumCircuit(int n_qubits = 0);

  int n_qubits() const { return n_qubits_; }
  const std::vector<CircuitOp>& ops() const { return ops_; }
  bool empty() const { return ops_.empty(); }
  std::size_t size() const { return ops_.size(); }

  /// Validates indices; throws std::out_of_range / std::invalid_argument.
  QuantumCircuit& append(const GateOp& op);
  QuantumCircuit& append(const MeasureReset& op);
  QuantumCircuit& append(const QuantumCircuit& other);

  std::size_t gate_count() const;
  std::size_t controlled_gate_count() const;

 private:
  int n_qubits_;
  std::vector<CircuitOp> ops_;
};

/// One line per op: `U3 q2 theta=... phi=... lambda=...`,
/// `CU3 c1(0)->q0 ...`, `CNOT c2->q0`, `MEASURE_RESET q2 label`.
std::string to_text(const QuantumCircuit& circuit);

/// Dense pure state of n qubits; qubit 0 is the least-significant index bit.
class StateVector {
 public:
  StateVector() = default;
  /// |0...0> on n qubits.
  explicit StateVector(int n_qubits);
  /// Takes the amplitudes as given; throws if the length is not 2^n.
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis(int n_qubits, Eigen::Index index);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Eigen::VectorXcd& amplitudes() { return amplitudes_; }
  const Complex& operator[](Eigen::Index i) const { return amplitudes_[i]; }
  Complex& operator[](Eigen::Index i) { return amplitudes_[i]; }

  double norm() const { return amplitudes_.norm(); }
  void normalize();
  /// Born probability that `target` reads 1.
  double probability_one(int target) const;
  Eigen::MatrixXcd projector() const { return amplitudes_ * amplitudes_.adjoint(); }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  int n_qubits_ = 0;
  Eigen::VectorXcd amplitudes_;
};

void apply_gate_inplace(StateVector& state, const GateOp& op);
StateVector apply_gate(StateVector state, const GateOp& op);

/// Applies a 2x2 matrix to one qubit (no normalization check, used for
/// Paulis and Kraus operators as well as gates).
void apply_single_qubit_matrix(StateVector& state, int target, const Matrix2c& m);

struct MeasurementResult {
  int outcome = 0;
  StateVector collapsed;
};

/// Outcome is 1 iff draw < P(1); the collapsed state is the renormalized
/// projection.
MeasurementResult measure_qubit(const StateVector& state, int target, double draw);
int measure_qubit_inplace(StateVector& state, int target, double draw);

/// Flips `target` back to |0> after a measurement that returned `outcome`.
void reset_after_measurement(StateVector& state, int target, int outcome);

/// Full unitary of a gate-only circuit (columns are images of basis states).
Eigen::MatrixXcd circuit_unitary(const QuantumCircuit& circuit);

/// Runs a gate-only circuit on a state.
void run_gates(StateVector& state, const QuantumCircuit& circuit);

/// Embeds a gate as a full 2^n x 2^n matrix.
Eigen::MatrixXcd gate_unitary(const GateOp& op, int n_qubits);

}  // namespace qsync
