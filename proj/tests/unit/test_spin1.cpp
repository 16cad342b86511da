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

#include <unsupported/Eigen/MatrixFunctions>

#include "doctest.h"
#include "qsync/density_circuit.hpp"
#include "qsync/spin1.hpp"

using namespace qsync;

namespace {

double wrap(double a) { return std::remainder(a, 2 * kPi); }

Matrix3c outer(int i, int j) {
  Matrix3c m = Matrix3c::Zero();
  m(i, j) = 1;
  return m;
}

// Spin-basis unitary lifted to the (q1,q0) register with |X> left alone.
Matrix4c embed(const Matrix3c& u) {
  Matrix4c out = Matrix4c::Zero();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) out(kSpinIndices[a], kSpinIndices[b]) = u(a, b);
  out(kSurplusIndex, kSurplusIndex) = 1;
  return out;
}

SpinModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  const auto c = [&] { return Complex(u(rng), u(rng)); };
  return {.delta = u(rng), .epsilon = 0.5 + 0.5 * u(rng), .j_01 = c(), .j_0m1 = c(),
          .j_m11 = c(), .dt = 0.1};
}

}  // namespace

TEST_CASE("spin encoding") {
  CHECK(SpinEncoding{}.basis_index(SpinState::zero) == 0);
  CHECK(SpinEncoding{}.basis_index(SpinState::plus) == 2);
  CHECK(SpinEncoding{}.basis_index(SpinState::minus) == 1);
  CHECK(SpinEncoding{}.basis_index(SpinState::surplus) == 3);
  CHECK(std::abs(encode_basis_state(SpinState::plus)[2] - Complex(1, 0)) < 1e-15);
  for (int i = 0; i < 4; ++i)
    CHECK(SpinEncoding{}.basis_index(SpinEncoding::spin_state(i)) == i);
}

TEST_CASE("signal hamiltonian terms") {
  SpinModelParams p;
  p.j_01 = 1;
  CHECK((signal_hamiltonian(p) - (outer(0, 1) + outer(1, 0))).norm() < 1e-14);
  p = {};
  p.j_0m1 = 1;
  CHECK((signal_hamiltonian(p) - (outer(2, 1) + outer(1, 2))).norm() < 1e-14);
  p = {};
  p.j_m11 = 1;
  CHECK((signal_hamiltonian(p) - (outer(0, 2) + outer(2, 0))).norm() < 1e-14);

  std::mt19937_64 rng(1);
  const Matrix3c h = signal_hamiltonian(random_params(rng));
  CHECK((h - h.adjoint()).norm() < 1e-14);
}

TEST_CASE("signal gate angles") {
  const U3Angles a = signal_gate_params(2.0 * std::polar(1.0, -kPi / 6), 0.05, 1.0);
  CHECK(a.theta == doctest::Approx(-0.2).epsilon(1e-14));
  CHECK(std::abs(wrap(a.phi - (-kPi / 6 - 3 * kPi / 2))) < 1e-14);
  CHECK(std::abs(wrap(a.lambda - (kPi / 6 - kPi / 2))) < 1e-14);

  const U3Angles z = signal_gate_params(0.0, 1.0, 0.1);
  CHECK(z.theta == 0.0);
  CHECK(std::abs(wrap(z.phi + 3 * kPi / 2)) < 1e-15);
  CHECK(std::abs(wrap(z.lambda + kPi / 2)) < 1e-15);
}

TEST_CASE("signal gate equals the exact two-level exponential") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const Complex j(u(rng), u(rng));
    const double eps = 0.7, dt = 0.3;
    // generator on (|0>, |1>) of the target qubit: j|1><0| + h.c.
    Matrix2c h;
    h << 0, std::conj(j), j, 0;
    const Matrix2c exact = (Complex(0, -eps * dt) * h).exp();
    CHECK((u3_matrix(signal_gate_params(j, eps, dt)) - exact).norm() < 1e-13);
  }
}

TEST_CASE("phase-only step is the identity on |0>") {
  SpinModelParams p{.delta = 0.8, .dt = 0.2};
  const QuantumCircuit c = build_trotter_step(p, {});
  CHECK(c.size() == 2);
  CHECK(c.controlled_gate_count() == 0);
  StateVector s = encode_basis_state(SpinState::zero, {}, 3);
  run_gates(s, c);
  CHECK(std::abs(s[0] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("controlled variant decouples the surplus state") {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const SpinModelParams p = random_params(rng);
    for (TrotterOrder order : {TrotterOrder::symmetric, TrotterOrder::first_order}) {
      const Eigen::MatrixXcd u = circuit_unitary(build_unitary_step(p, {.order = order}));
      CHECK(std::abs(std::norm(u(3, 3)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("signal-only evolution tracks the exact propagator") {
  SpinModelParams p{.epsilon = 1, .j_01 = std::polar(1.0, 5 * kPi / 6),
                    .j_0m1 = 0.5 * std::polar(1.0, -kPi / 6), .dt = 0.1};
  const Eigen::MatrixXcd step = circuit_unitary(build_unitary_step(p, {}));
  const Matrix3c h = model_hamiltonian(p);
  Eigen::VectorXcd psi = StateVector(2).amplitudes();
  for (int n = 1; n <= 30; ++n) {
    psi = step * psi;
    const Eigen::Vector3cd exact =
        (Complex(0, -n * p.dt) * h).exp() * Eigen::Vector3cd(0, 1, 0);
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(std::norm(psi[kSpinIndices[k]]) - std::norm(exact[k])) <
            5 * n * std::pow(p.dt, 3));
    }
  }
}

TEST_CASE("symmetric step error is third order") {
  std::mt19937_64 rng(8);
  SpinModelParams p = random_params(rng);
  double prev = 0;
  for (double dt : {0.1, 0.05}) {
    p.dt = dt;
    const Eigen::MatrixXcd u = circuit_unitary(build_unitary_step(p, {}));
    const Matrix4c exact = embed((Complex(0, -dt) * model_hamiltonian(p)).exp());
    // global phase is irrelevant on the spin block
    const Complex ph = u(0, 0) / std::abs(u(0, 0)) / (exact(0, 0) / std::abs(exact(0, 0)));
    const double err = (u - ph * exact).norm();
    if (prev > 0) CHECK(prev / err == doctest::Approx(8.0).epsilon(0.15));
    prev = err;
  }
}

TEST_CASE("squeeze subcircuit") {
  const QuantumCircuit id = build_squeeze_subcircuit(1.0, 0.0, 0.1);
  CHECK((circuit_unitary(id) - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-14);

  const QuantumCircuit sw = build_squeeze_subcircuit(1.0, 1.0, kPi / 2);
  CHECK(sw.controlled_gate_count() == 3);
  const Eigen::MatrixXcd u = circuit_unitary(sw);
  CHECK(std::abs(u(2, 1) - Complex(0, -1)) < 1e-14);

  // generic j on the {|01>,|10>} block, identity elsewhere
  const Complex j = std::polar(1.3, 0.4);
  const double eps = 0.6, dt = 0.5;
  SpinModelParams p{.epsilon = eps, .j_m11 = j, .dt = dt};
  const Matrix4c exact = embed((Complex(0, -eps * dt) * signal_hamiltonian(p)).exp());
  CHECK((circuit_unitary(build_squeeze_subcircuit(j, eps, dt)) - exact).norm() < 1e-13);
}

TEST_CASE("dissipation subcircuit") {
  CHECK(relaxation_angle(0.2) == doctest::Approx(0.92730).epsilon(1e-5));
  CHECK(effective_rate(0.5, JumpConvention::oracle_consistent) == 1.0);
  CHECK(effective_rate(0.5, JumpConvention::paper_literal) == 0.5);

  for (DissipationStyle style : {DissipationStyle::ccu_circuit_a4,
                                 DissipationStyle::two_cnot_circuit_a5}) {
    const QuantumCircuit c = build_dissipation_subcircuit(
        0.5, 0.2, style, JumpConvention::oracle_consistent, 0, 1, 2);
    QuantumCircuit gates(2);
    for (const auto& op : c.ops())
      if (const auto* g = std::get_if<GateOp>(&op)) gates.append(*g);
    const Eigen::MatrixXcd u = circuit_unitary(gates);

    const StateVector zero(2, u * StateVector::basis(2, 0).amplitudes());
    CHECK(zero.probability_one(1) < 1e-15);
    CHECK(std::abs(zero[0] - Complex(1, 0)) < 1e-14);

    const StateVector one(2, u * StateVector::basis(2, 1).amplitudes());
    CHECK(one.probability_one(1) == doctest::Approx(0.2).epsilon(1e-13));

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> draw;
    const int n = 100000;
    int clicks = 0;
    for (int i = 0; i < n; ++i) clicks += measure_qubit(one, 1, draw(rng)).outcome;
    CHECK(std::abs(clicks / double(n) - 0.2) < 0.004);
  }
}

TEST_CASE("A4 and A5 circuits agree on every input") {
  for (double g : {0.1, 0.5, 1.2}) {
    const auto unitary = [&](DissipationStyle s) {
      QuantumCircuit gates(2);
      const QuantumCircuit c =
          build_dissipation_subcircuit(g, 0.2, s, JumpConvention::oracle_consistent, 0, 1, 2);
      for (const auto& op : c.ops())
        if (const auto* gop = std::get_if<GateOp>(&op)) gates.append(*gop);
      return circuit_unitary(gates);
    };
    CHECK((unitary(DissipationStyle::ccu_circuit_a4) -
           unitary(DissipationStyle::two_cnot_circuit_a5))
              .norm() < 1e-13);
  }
}

TEST_CASE("trotter step with dissipation relaxes +1 by one jump probability") {
  SpinModelParams p{.gamma_10 = 0.5, .dt = 0.2};
  const QuantumCircuit step = build_trotter_step(p, {});
  CHECK(dissipation_channels(p).size() == 1);
  Eigen::MatrixXcd rho = encode_basis_state(SpinState::plus, {}, 3).projector();
  run_circuit_density(rho, step);
  const Eigen::MatrixXcd sys = reduced_density(rho, 3, {0, 1});
  CHECK(sys(2, 2).real() == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(sys(0, 0).real() == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("parameter validation") {
  SpinModelParams p{.gamma_10 = 1, .dt = 0.2};
  CHECK(validate(p).empty());
  p.dt = 0.3;
  CHECK(validate(p).size() == 1);  // 0.3 > 0.25 warns
  p.dt = 0.6;                      // 2*1*0.6 >= 1
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
  CHECK_NOTHROW(validate(p, JumpConvention::paper_literal));
  p.epsilon = -1;
  CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("uncontrolled variant uses only single-qubit signal gates") {
  SpinModelParams p{.epsilon = 0.25, .j_01 = 1.0, .j_0m1 = 1.0, .dt = 0.2};
  const QuantumCircuit c = build_unitary_step(p, {.signal_style = SignalStyle::uncontrolled});
  CHECK(c.controlled_gate_count() == 0);
  CHECK(build_unitary_step(p, {}).controlled_gate_count() > 0);
}
