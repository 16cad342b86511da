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

#include "qsync/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsync/density_circuit.hpp"

namespace qsync {

namespace {

Eigen::MatrixXcd embed_spin_operator(const Matrix3c& op) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(kSpinIndices[r], kSpinIndices[c]) = op(r, c);
  }
  return out;
}

// sigma+ = |0><1| on one qubit of the two-qubit register (relaxation).
Eigen::MatrixXcd qubit_lowering(int qubit) {
  Matrix2c s;
  s << 0, 1, 0, 0;
  return embed_single_qubit(s, qubit, 2);
}

// j|1><0| + h.c. on one qubit.
Eigen::MatrixXcd qubit_drive(Complex j, int qubit) {
  Matrix2c s;
  s << 0, std::conj(j), j, 0;
  return embed_single_qubit(s, qubit, 2);
}

double generator_scale(const LindbladModel& m) {
  double s = 2.0 * operator_norm(m.hamiltonian);
  for (const auto& j : m.jumps) s += 2.0 * j.rate * std::pow(operator_norm(j.op), 2);
  return s;
}

DensityMatrix rk4_propagate(const LindbladModel& m, DensityMatrix rho, double t_final, long steps) {
  const double h = t_final / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const Eigen::MatrixXcd k1 = lindblad_rhs(m, rho);
    const Eigen::MatrixXcd k2 = lindblad_rhs(m, rho + (h / 2) * k1);
    const Eigen::MatrixXcd k3 = lindblad_rhs(m, rho + (h / 2) * k2);
    const Eigen::MatrixXcd k4 = lindblad_rhs(m, rho + h * k3);
    rho += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = hermitian_part(rho);
  }
  return rho;
}

}  // namespace

void LindbladModel::validate() const {
  if (hamiltonian.rows() != hamiltonian.cols()) throw std::invalid_argument("H is not square");
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("H is not Hermitian");
  }
  for (const auto& j : jumps) {
    if (j.rate < 0) throw std::invalid_argument("negative jump rate");
    if (j.op.rows() != dim() || j.op.cols() != dim()) {
      throw std::invalid_argument("jump operator dimension mismatch");
    }
  }
}

LindbladModel spin_model(const SpinModelParams& p) {
  LindbladModel m;
  m.hamiltonian = model_hamiltonian(p);
  m.jumps.push_back({spin_plus() * spin_z(), p.gamma_m10});
  m.jumps.push_back({spin_minus() * spin_z(), p.gamma_10});
  return m;
}

LindbladModel encoded_model(const SpinModelParams& p, SignalStyle style) {
  LindbladModel m;
  if (style == SignalStyle::controlled) {
    m.hamiltonian = embed_spin_operator(model_hamiltonian(p));
  } else {
    SpinModelParams squeeze_only = p;
    squeeze_only.delta = 0.0;
    squeeze_only.j_01 = 0.0;
    squeeze_only.j_0m1 = 0.0;
    Matrix2c n;
    n << 0, 0, 0, 1;
    const SpinEncoding enc;
    m.hamiltonian = p.delta * (embed_single_qubit(n, enc.q1, 2) - embed_single_qubit(n, enc.q0, 2)) +
                    p.epsilon * (qubit_drive(p.j_01, enc.q1) + qubit_drive(p.j_0m1, enc.q0)) +
                    embed_spin_operator(model_hamiltonian(squeeze_only));
  }
  const SpinEncoding enc;
  m.jumps.push_back({qubit_lowering(enc.q0), 2.0 * p.gamma_m10});
  m.jumps.push_back({qubit_lowering(enc.q1), 2.0 * p.gamma_10});
  return m;
}

IntegrationReport integrate_lindblad_report(const LindbladModel& model, const DensityMatrix& rho0,
                                            double t_final, const IntegrationOptions& options) {
  if (t_final < 0) throw std::invalid_argument("integrate_lindblad: negative time");
  model.validate();
  if (rho0.rows() != model.dim()) throw std::invalid_argument("integrate_lindblad: size mismatch");
  if (t_final == 0.0) return {rho0, 0, 0.0};

  long steps = std::max(4L, static_cast<long>(std::ceil(t_final * generator_scale(model) / 0.25)));
  DensityMatrix coarse = rk4_propagate(model, rho0, t_final, steps);
  double change = 0.0;
  while (true) {
    if (2 * steps > options.max_steps) {
      std::ostringstream os;
      os << "integrate_lindblad: tolerance " << options.tol << " unreachable within "
         << options.max_steps << " steps (last change " << change << ")";
      throw std::runtime_error(os.str());
    }
    steps *= 2;
    DensityMatrix fine = rk4_propagate(model, rho0, t_final, steps);
    change = (fine - coarse).cwiseAbs().maxCoeff();
    coarse = std::move(fine);
    if (change < options.tol) break;
  }
  check_density_matrix(coarse, 1e-10, 1e-10);
  return {coarse, steps, change};
}

DensityMatrix integrate_lindblad(const LindbladModel& model, const DensityMatrix& rho0,
                                 double t_final, double tol) {
  return integrate_lindblad_report(model, rho0, t_final, {tol}).rho;
}

Eigen::MatrixXcd unitary_propagator(const Eigen::MatrixXcd& hamiltonian, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hamiltonian);
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * (-kI * t)).array().exp().matrix();
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

namespace {

TrotterErrorScan finish_scan(std::vector<TrotterErrorPoint> points) {
  TrotterErrorScan scan{std::move(points), 0.0};
  std::vector<double> x, y;
  for (const auto& p : scan.points) {
    if (p.error > 0) {
      x.push_back(p.dt);
      y.push_back(p.error);
    }
  }
  scan.slope = x.size() >= 2 ? loglog_slope(x, y) : 0.0;
  return scan;
}

std::vector<Eigen::MatrixXcd> probe_states() {
  std::vector<Eigen::MatrixXcd> out;
  for (int a = 0; a < 4; ++a) {
    out.push_back(StateVector::basis(2, a).projector());
    for (int b = a + 1; b < 4; ++b) {
      for (Complex phase : {Complex(1.0), kI}) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
        v(a) = 1.0 / std::sqrt(2.0);
        v(b) = phase / std::sqrt(2.0);
        out.emplace_back(v * v.adjoint());
      }
    }
  }
  return out;
}

}  // namespace

TrotterErrorScan trotter_error_scan_unitary(const SpinModelParams& params,
                                            const TrotterVariant& variant,
                                            const std::vector<double>& dt_grid) {
  std::vector<TrotterErrorPoint> points;
  for (double dt : dt_grid) {
    SpinModelParams p = params;
    p.dt = dt;
    const Eigen::MatrixXcd circuit = circuit_unitary(build_unitary_step(p, variant));
    const Eigen::MatrixXcd exact =
        unitary_propagator(encoded_model(p, variant.signal_style).hamiltonian, dt);
    points.push_back({dt, operator_norm(circuit - exact)});
  }
  return finish_scan(std::move(points));
}

TrotterErrorScan trotter_error_scan_channel(const SpinModelParams& params,
                                            const TrotterVariant& variant,
                                            const std::vector<double>& dt_grid) {
  const auto probes = probe_states();
  std::vector<TrotterErrorPoint> points;
  for (double dt : dt_grid) {
    SpinModelParams p = params;
    p.dt = dt;
    const QuantumCircuit step = build_trotter_step(p, variant, {2, 2}, {}, 3);
    const LindbladModel model = encoded_model(p, variant.signal_style);
    double worst = 0.0;
    for (const auto& rho_in : probes) {
      Eigen::MatrixXcd rho = extend_with_zeros(rho_in, 1);
      run_circuit_density(rho, step);
      const Eigen::MatrixXcd circuit_out = reduced_density(rho, 3, {0, 1});
      const DensityMatrix exact = integrate_lindblad(model, rho_in, dt, 1e-14);
      worst = std::max(worst, operator_norm(circuit_out - exact));
    }
    points.push_back({dt, worst});
  }
  return finish_scan(std::move(points));
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (count < 2 || lo <= 0 || hi <= lo) throw std::invalid_argument("log_spaced: bad range");
  std::vector<double> out;
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * i));
  out.back() = hi;
  return out;
}

}  // namespace qsync
