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

#include <cstdint>
#include <variant>
#include <vector>

#include "qsync/noise.hpp"
#include "qsync/spin1.hpp"

namespace qsync {

/// Spin basis state, explicit two-qubit pure state, or a mixed state
/// (4x4, or 3x3 on the spin block) that is sampled per trajectory.
using InitialState = std::variant<SpinState, StateVector, DensityMatrix>;

/// The hardware allocates fresh ancillas and cannot reset mid-circuit, which
/// caps the circuit depth at four steps.
inline constexpr int kHardwareMaxSteps = 4;

struct TrajectoryConfig {
  int n_steps = 0;
  long n_trajectories = 1;
  std::uint64_t seed = 0;
  SpinModelParams params{};
  TrotterVariant variant{};
  InitialState initial_state = SpinState::zero;
  NoiseParams noise = NoiseParams::none();
  /// Fresh ancilla per channel per step, all measured at the end.
  bool hardware_faithful = false;
  /// 0 picks std::thread::hardware_concurrency().
  int workers = 0;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct ShotRecord {
  /// Ancilla readings, step-major: jump_log[step * n_channels + channel].
  std::vector<std::uint8_t> jump_log;
  int n_channels = 0;
  /// Two-qubit state on (q1, q0).
  StateVector final_state;

  friend bool operator==(const ShotRecord&, const ShotRecord&) = default;
};

struct EnsembleStats {
  DensityMatrix mean_density;
  Eigen::MatrixXd se_real;  ///< standard error of Re rho_ij
  Eigen::MatrixXd se_imag;  ///< standard error of Im rho_ij
  long n_samples = 0;
  /// Number of recorded 1s per dissipation channel, in circuit order.
  std::vector<long> jump_counts;

  /// Entrywise sqrt(se_re^2 + se_im^2).
  Eigen::MatrixXd standard_errors() const;
};

/// Shots are reduced in blocks of this size; blocks merge in index order.
inline constexpr long kEnsembleBlock = 4096;

ShotRecord run_trajectory(const TrajectoryConfig& config, std::uint64_t trajectory_index);

EnsembleStats run_ensemble(const TrajectoryConfig& config);

struct LeakageBlock {
  double rho_xx = 0.0;
  /// rho_{k,X} for k = +1, 0, -1.
  std::array<Complex, 3> rho_kx{};
};

struct SpinDensity {
  Matrix3c rho;       ///< renormalized by 1/(1 - rho_XX)
  double raw_trace = 0.0;  ///< trace of the spin block before renormalization
  LeakageBlock leakage;
  Eigen::Matrix3d se_real = Eigen::Matrix3d::Zero();
  Eigen::Matrix3d se_imag = Eigen::Matrix3d::Zero();
};

/// Spin block and leakage entries without renormalization (never throws for
/// a 4x4 input).
SpinDensity raw_spin_block(const DensityMatrix& rho_2q, const SpinEncoding& encoding = {});

/// Splits a 4x4 encoded density matrix into the spin block (basis order
/// +1, 0, -1) and the leakage entries. Throws std::domain_error when
/// rho_XX >= 1 - 1e-9.
SpinDensity ensemble_density_matrix(const DensityMatrix& rho_2q, const SpinEncoding& encoding = {});
SpinDensity ensemble_density_matrix(const EnsembleStats& stats, const SpinEncoding& encoding = {});

/// Ensemble average computed exactly: the same circuit applied as channels
/// to the density matrix (measure-reset dephases and resets, noise enters as
/// its channel). Readout flips do not touch the state and are ignored.
DensityMatrix exact_ensemble_density(const TrajectoryConfig& config);

/// Density-matrix trajectory of exact_ensemble_density after every step
/// (element 0 is the initial state).
std::vector<DensityMatrix> exact_ensemble_history(const TrajectoryConfig& config);

/// Initial state as a 4x4 density matrix.
DensityMatrix initial_density(const InitialState& state);

}  // namespace qsync
