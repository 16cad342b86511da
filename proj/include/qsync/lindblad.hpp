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

#include "qsync/spin1.hpp"

namespace qsync {

struct JumpOperator {
  Eigen::MatrixXcd op;
  double rate = 0.0;
};

/// d rho/dt = -i[H, rho] + sum_k rate_k D[L_k] rho.
struct LindbladModel {
  Eigen::MatrixXcd hamiltonian;
  std::vector<JumpOperator> jumps;

  Eigen::Index dim() const { return hamiltonian.rows(); }
  /// Throws on non-Hermitian H, negative rates or shape mismatch.
  void validate() const;
};

/// The 3x3 spin model: H = delta Sz + eps H_signal, jumps (S+ Sz, Gamma_{-1,0})
/// and (S- Sz, Gamma_{1,0}).
LindbladModel spin_model(const SpinModelParams& params);

/// The same dynamics on the encoded two-qubit register: qubit relaxation
/// sigma+ on q1 at 2 Gamma_{1,0} and on q0 at 2 Gamma_{-1,0}. With
/// SignalStyle::controlled the Hamiltonian is the spin Hamiltonian embedded
/// with |X> decoupled; with SignalStyle::uncontrolled the two drives act as
/// independent single-qubit terms (the generator of the uncontrolled
/// circuit).
LindbladModel encoded_model(const SpinModelParams& params,
                            SignalStyle style = SignalStyle::controlled);

/// Generator applied to rho. The result is traceless and Hermitian for
/// Hermitian rho.
template <typename Derived>
Eigen::MatrixXcd lindblad_rhs(const LindbladModel& model, const Eigen::MatrixBase<Derived>& rho) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim()) {
    throw std::invalid_argument("lindblad_rhs: dimension mismatch");
  }
  const Eigen::MatrixXcd& h = model.hamiltonian;
  Eigen::MatrixXcd out = -kI * (h * rho - rho * h);
  for (const auto& jump : model.jumps) {
    if (jump.rate == 0.0) continue;
    const Eigen::MatrixXcd& l = jump.op;
    const Eigen::MatrixXcd ldl = l.adjoint() * l;
    out += jump.rate * (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl));
  }
  return out;
}

struct IntegrationOptions {
  double tol = 1e-10;
  long max_steps = 1L << 20;
};

struct IntegrationReport {
  DensityMatrix rho;
  long steps = 0;
  double step_change = 0.0;  ///< max entry change between the last two refinements
};

/// Classical RK4 with step doubling until halving the step moves every entry
/// by less than tol. Hermiticity is restored after each step. Throws
/// std::runtime_error when tol is not met within max_steps.
IntegrationReport integrate_lindblad_report(const LindbladModel& model, const DensityMatrix& rho0,
                                            double t_final, const IntegrationOptions& options = {});

DensityMatrix integrate_lindblad(const LindbladModel& model, const DensityMatrix& rho0,
                                 double t_final, double tol = 1e-10);

/// exp(-i H t) for Hermitian H.
Eigen::MatrixXcd unitary_propagator(const Eigen::MatrixXcd& hamiltonian, double t);

struct TrotterErrorPoint {
  double dt = 0.0;
  double error = 0.0;
};

struct TrotterErrorScan {
  std::vector<TrotterErrorPoint> points;
  double slope = 0.0;  ///< least-squares slope of log error vs log dt
};

/// Per-step operator-norm error between the unitary part of the Trotter step
/// and exp(-i H dt) of the encoded model (rates ignored).
TrotterErrorScan trotter_error_scan_unitary(const SpinModelParams& params,
                                            const TrotterVariant& variant,
                                            const std::vector<double>& dt_grid);

/// Per-step error of the full dissipative step (ancilla traced out) against
/// the encoded Lindblad propagator, maximized over a tomographically complete
/// set of 16 input states.
TrotterErrorScan trotter_error_scan_channel(const SpinModelParams& params,
                                            const TrotterVariant& variant,
                                            const std::vector<double>& dt_grid);

/// Log-spaced grid from lo to hi inclusive.
std::vector<double> log_spaced(double lo, double hi, int count);

}  // namespace qsync
