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

#include <random>

#include "doctest.h"
#include "qsync/statevec.hpp"

using namespace qsync;

namespace {

StateVector random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd a(Eigen::Index{1} << n);
  for (auto& x : a) x = {g(rng), g(rng)};
  a.normalize();
  return StateVector(n, a);
}

U3Angles random_angles(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  return {u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("u3 special cases") {
  const Matrix2c x = u3_matrix(x_angles());
  CHECK(std::abs(x(0, 0)) < 1e-15);
  CHECK(std::abs(x(1, 1)) < 1e-15);
  CHECK(std::abs(x(1, 0) - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(x(0, 1) - Complex(1, 0)) < 1e-15);

  const double lam = 0.7;
  const Matrix2c p = u3_matrix(u1_angles(lam));
  Matrix2c expect = Matrix2c::Zero();
  expect(0, 0) = 1;
  expect(1, 1) = std::polar(1.0, lam);
  CHECK((p - expect).norm() < 1e-15);

  // U2 in its usual closed form
  const double phi = 0.3, l = -1.1;
  Matrix2c u2;
  u2 << 1, -std::polar(1.0, l), std::polar(1.0, phi), std::polar(1.0, phi + l);
  u2 /= std::sqrt(2.0);
  CHECK((u3_matrix(u2_angles(phi, l)) - u2).norm() < 1e-15);
}

TEST_CASE("u3 is unitary and inverse undoes it") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const U3Angles a = random_angles(rng);
    const Matrix2c u = u3_matrix(a);
    CHECK((u.adjoint() * u - Matrix2c::Identity()).norm() < 1e-14);
    CHECK((u3_matrix(inverse(a)) * u - Matrix2c::Identity()).norm() < 1e-14);
  }
}

TEST_CASE("X on qubit 0 of |00>") {
  const StateVector out = apply_gate(StateVector(2), GateOp::u3(0, x_angles()));
  CHECK(std::abs(out[1] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(out[0]) < 1e-15);
}

TEST_CASE("open-circle control fires on zero") {
  const GateOp g = GateOp::controlled_u3(1, 0, x_angles(), ControlPolarity::on_zero);
  const StateVector a = apply_gate(StateVector::basis(2, 0), g);
  CHECK(std::abs(a[1] - Complex(1, 0)) < 1e-15);
  const StateVector b = apply_gate(StateVector::basis(2, 2), g);
  CHECK(std::abs(b[2] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("CNOT equals controlled X on every basis input") {
  const GateOp cx = GateOp::cnot(1, 0);
  const GateOp cu = GateOp::controlled_u3(1, 0, x_angles());
  CHECK((gate_unitary(cx, 2) - gate_unitary(cu, 2)).norm() < 1e-15);
  for (int i = 0; i < 4; ++i) {
    const StateVector out = apply_gate(StateVector::basis(2, i), cx);
    const int expect = (i & 2) ? (i ^ 1) : i;
    CHECK(std::abs(out[expect] - Complex(1, 0)) < 1e-15);
  }
}

TEST_CASE("gates preserve the norm") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    StateVector s = random_state(2, rng);
    const int t = static_cast<int>(rng() % 2);
    GateOp op;
    switch (rng() % 3) {
      case 0: op = GateOp::u3(t, random_angles(rng)); break;
      case 1: op = GateOp::cnot(1 - t, t); break;
      default:
        op = GateOp::controlled_u3(1 - t, t, random_angles(rng),
                                   rng() % 2 ? ControlPolarity::on_one : ControlPolarity::on_zero);
    }
    apply_gate_inplace(s, op);
    CHECK(std::abs(s.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("sparse kernel agrees with dense embedding on three qubits") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 30; ++i) {
    const StateVector s = random_state(3, rng);
    const int t = static_cast<int>(rng() % 3);
    const int c = (t + 1 + static_cast<int>(rng() % 2)) % 3;
    const GateOp op = GateOp::controlled_u3(c, t, random_angles(rng), ControlPolarity::on_zero);
    const Eigen::VectorXcd dense = gate_unitary(op, 3) * s.amplitudes();
    CHECK((apply_gate(s, op).amplitudes() - dense).norm() < 1e-13);
  }
}

TEST_CASE("measurement examples") {
  const StateVector one = StateVector::basis(1, 1);
  for (double draw : {0.0, 0.5, 0.999}) {
    const MeasurementResult r = measure_qubit(one, 0, draw);
    CHECK(r.outcome == 1);
    CHECK((r.collapsed.amplitudes() - one.amplitudes()).norm() < 1e-15);
  }
  Eigen::VectorXcd plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const StateVector s(1, plus);
  const MeasurementResult r = measure_qubit(s, 0, 0.3);
  CHECK(r.outcome == 1);
  CHECK(std::abs(std::abs(r.collapsed[1]) - 1.0) < 1e-15);
  CHECK(measure_qubit(s, 0, 0.7).outcome == 0);
}

TEST_CASE("measurement frequencies follow the Born rule") {
  Eigen::VectorXcd a(2);
  a << std::sqrt(0.7), Complex(0, std::sqrt(0.3));
  const StateVector s(1, a);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u;
  const int n = 100000;
  int ones = 0;
  for (int i = 0; i < n; ++i) ones += measure_qubit(s, 0, u(rng)).outcome;
  const double sigma = std::sqrt(0.3 * 0.7 / n);
  CHECK(std::abs(ones / double(n) - 0.3) < 3 * sigma);
}

TEST_CASE("relaxation rotation transfers probability gamma dt to the ancilla") {
  // ancilla controlled RY with sin^2(theta/2) = p, then CNOT back; beta = 1
  const double p = 0.2;
  const double theta = 2 * std::asin(std::sqrt(p));
  QuantumCircuit c(2);
  c.append(GateOp::controlled_u3(0, 1, {theta, 0, 0}));
  c.append(GateOp::cnot(1, 0));
  const Eigen::VectorXcd out = circuit_unitary(c) * StateVector::basis(2, 1).amplitudes();
  const StateVector s(2, out);
  CHECK(std::abs(s.probability_one(1) - p) < 1e-14);
}

TEST_CASE("reset returns the target to zero") {
  StateVector s = StateVector::basis(2, 3);
  const int k = measure_qubit_inplace(s, 1, 0.5);
  CHECK(k == 1);
  reset_after_measurement(s, 1, k);
  CHECK(std::abs(s[1] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("circuit validation and pretty printer") {
  QuantumCircuit c(2);
  CHECK_THROWS_AS(c.append(GateOp::u3(2, x_angles())), std::out_of_range);
  CHECK_THROWS(c.append(GateOp::cnot(1, 1)));
  c.append(GateOp::cnot(1, 0));
  c.append(GateOp::controlled_u3(0, 1, {0.5, 0, 0}, ControlPolarity::on_zero));
  c.append(MeasureReset{1, "D+1"});
  CHECK(c.gate_count() == 2);
  CHECK(c.controlled_gate_count() == 2);
  const std::string text = to_text(c);
  CHECK(text.find("CNOT c1->q0") != std::string::npos);
  CHECK(text.find("CU3 c0(") != std::string::npos);
  CHECK(text.find("MEASURE_RESET q1 D+1") != std::string::npos);
}

TEST_CASE("amplitude vector length is checked") {
  CHECK_THROWS(StateVector(2, Eigen::VectorXcd::Zero(3)));
}
