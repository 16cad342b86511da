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

#include "qsync/density_circuit.hpp"

#include <stdexcept>

namespace qsync {

void apply_measure_reset_channel(Eigen::MatrixXcd& rho, int n_qubits, int qubit) {
  Matrix2c k0, k1;
  k0 << 1, 0, 0, 0;  // |0><0|
  k1 << 0, 1, 0, 0;  // |0><1|
  const Eigen::MatrixXcd e0 = embed_single_qubit(k0, qubit, n_qubits);
  const Eigen::MatrixXcd e1 = embed_single_qubit(k1, qubit, n_qubits);
  rho = e0 * rho * e0.adjoint() + e1 * rho * e1.adjoint();
}

void run_circuit_density(Eigen::MatrixXcd& rho, const QuantumCircuit& circuit,
                         const NoiseParams& noise) {
  const int n = circuit.n_qubits();
  if (rho.rows() != (Eigen::Index{1} << n) || rho.cols() != rho.rows()) {
    throw std::invalid_argument("density matrix does not match the circuit width");
  }
  for (const auto& op : circuit.ops()) {
    if (const auto* g = std::get_if<GateOp>(&op)) {
      const Eigen::MatrixXcd u = gate_unitary(*g, n);
      rho = u * rho * u.adjoint();
      apply_gate_noise_channel(rho, n, *g, noise);
    } else {
      apply_measure_reset_channel(rho, n, std::get<MeasureReset>(op).target);
    }
  }
}

Eigen::MatrixXcd reduced_density(const Eigen::MatrixXcd& rho, int n_qubits,
                                 const std::vector<int>& keep) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  if (rho.rows() != dim) throw std::invalid_argument("reduced_density: size mismatch");
  const auto k = static_cast<int>(keep.size());
  Eigen::Index keep_mask = 0;
  for (int q : keep) {
    if (q < 0 || q >= n_qubits) throw std::out_of_range("reduced_density: bad qubit");
    keep_mask |= Eigen::Index{1} << q;
  }
  const auto compress = [&](Eigen::Index i) {
    Eigen::Index out = 0;
    for (int b = 0; b < k; ++b) {
      if (i & (Eigen::Index{1} << keep[b])) out |= Eigen::Index{1} << b;
    }
    return out;
  };
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(Eigen::Index{1} << k, Eigen::Index{1} << k);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      if ((i & ~keep_mask) != (j & ~keep_mask)) continue;
      out(compress(i), compress(j)) += rho(i, j);
    }
  }
  return out;
}

Eigen::MatrixXcd extend_with_zeros(const Eigen::MatrixXcd& rho, int extra) {
  const Eigen::Index dim = rho.rows() << extra;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  out.topLeftCorner(rho.rows(), rho.cols()) = rho;
  return out;
}

}  // namespace qsync
