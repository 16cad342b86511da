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

#include "qsync/trajectory.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "qsync/density_circuit.hpp"

namespace qsync {

namespace {

constexpr int kSystemQubits = 2;

StreamChannel channel_for(const std::string& label) {
  return label == "D-1" ? StreamChannel::dissipation_q0 : StreamChannel::dissipation_q1;
}

DensityMatrix embed_spin_block(const DensityMatrix& rho3) {
  DensityMatrix out = DensityMatrix::Zero(4, 4);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) out(kSpinIndices[r], kSpinIndices[c]) = rho3(r, c);
  }
  return out;
}

// Everything that does not depend on the trajectory index.
struct Plan {
  int n_qubits = 3;
  int n_channels = 0;
  std::vector<QuantumCircuit> steps;  // one entry, or one per step in hardware mode
  // initial state: either fixed or sampled from an eigendecomposition
  std::optional<Eigen::VectorXcd> fixed;
  Eigen::VectorXd cumulative;
  Eigen::MatrixXcd eigenvectors;

  const QuantumCircuit& step(int s) const { return steps.size() == 1 ? steps[0] : steps[s]; }
};

Plan make_plan(const TrajectoryConfig& cfg) {
  cfg.validate();
  Plan plan;
  const SpinEncoding enc;
  plan.n_channels = static_cast<int>(dissipation_channels(cfg.params, enc).size());
  if (!cfg.hardware_faithful) {
    plan.n_qubits = kSystemQubits + 1;
    plan.steps.push_back(build_trotter_step(cfg.params, cfg.variant, {2, 2}, enc, plan.n_qubits));
  } else {
    plan.n_qubits = kSystemQubits + std::max(1, cfg.n_steps * plan.n_channels);
    for (int s = 0; s < std::max(cfg.n_steps, 1); ++s) {
      // channel order in a step is D+1 then D-1 (whichever are present)
      const int base = kSystemQubits + s * plan.n_channels;
      AncillaPair anc{base, base};
      if (plan.n_channels == 2) anc.a0 = base + 1;
      plan.steps.push_back(build_trotter_step(cfg.params, cfg.variant, anc, enc, plan.n_qubits));
    }
  }

  if (const auto* s = std::get_if<SpinState>(&cfg.initial_state)) {
    plan.fixed = encode_basis_state(*s, enc, kSystemQubits).amplitudes();
  } else if (const auto* v = std::get_if<StateVector>(&cfg.initial_state)) {
    plan.fixed = v->amplitudes();
  } else {
    const DensityMatrix rho = initial_density(cfg.initial_state);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho);
    plan.eigenvectors = solver.eigenvectors();
    const Eigen::VectorXd w = solver.eigenvalues().cwiseMax(0.0);
    plan.cumulative.resize(w.size());
    double acc = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) plan.cumulative[i] = (acc += w[i]);
    plan.cumulative /= acc;
  }
  return plan;
}

StateVector initial_vector(const TrajectoryConfig& cfg, const Plan& plan, std::uint64_t index) {
  Eigen::VectorXcd system;
  if (plan.fixed) {
    system = *plan.fixed;
  } else {
    CounterStream draws(cfg.seed, index, 0, StreamChannel::initial_state);
    const double u = draws.uniform();
    Eigen::Index k = 0;
    while (k + 1 < plan.cumulative.size() && u >= plan.cumulative[k]) ++k;
    system = plan.eigenvectors.col(k);
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << plan.n_qubits);
  amps.head(4) = system;
  return StateVector(plan.n_qubits, std::move(amps));
}

struct PendingMeasurement {
  int target;
  int step;
  StreamChannel channel;
  std::size_t slot;
};

ShotRecord run_planned(const TrajectoryConfig& cfg, const Plan& plan, std::uint64_t index) {
  ShotRecord rec;
  rec.n_channels = plan.n_channels;
  rec.jump_log.assign(static_cast<std::size_t>(cfg.n_steps) * plan.n_channels, 0);
  StateVector psi = initial_vector(cfg, plan, index);
  const NoiseParams& noise = cfg.noise;
  std::vector<PendingMeasurement> pending;

  const auto record = [&](int outcome, int step, std::size_t slot) {
    if (noise.enabled) {
      CounterStream reads(cfg.seed, index, static_cast<std::uint32_t>(step), StreamChannel::readout);
      // one stream per (step, slot): skip ahead by slot so draws stay independent
      for (std::size_t i = 0; i < slot % plan.n_channels; ++i) reads.uniform();
      outcome = apply_readout_flip(outcome, noise.p_read0, noise.p_read1, reads);
    }
    rec.jump_log[slot] = static_cast<std::uint8_t>(outcome);
  };

  for (int s = 0; s < cfg.n_steps; ++s) {
    const auto step = static_cast<std::uint32_t>(s);
    CounterStream gate_draws(cfg.seed, index, step, StreamChannel::gate_noise);
    std::size_t slot = static_cast<std::size_t>(s) * plan.n_channels;
    for (const auto& op : plan.step(s).ops()) {
      if (const auto* g = std::get_if<GateOp>(&op)) {
        apply_gate_inplace(psi, *g);
        apply_gate_noise(psi, *g, noise, gate_draws);
        continue;
      }
      const auto& m = std::get<MeasureReset>(op);
      const StreamChannel channel = channel_for(m.label);
      if (cfg.hardware_faithful) {
        pending.push_back({m.target, s, channel, slot++});
        continue;
      }
      CounterStream draws(cfg.seed, index, step, channel);
      const int outcome = measure_qubit_inplace(psi, m.target, draws.uniform());
      reset_after_measurement(psi, m.target, outcome);
      record(outcome, s, slot++);
    }
    if (noise.enabled && noise.p_damping > 0.0) {
      const SpinEncoding enc;
      apply_amplitude_damping_sample(psi, enc.q1, noise.p_damping, gate_draws);
      apply_amplitude_damping_sample(psi, enc.q0, noise.p_damping, gate_draws);
    }
  }

  Eigen::Index offset = 0;
  for (const auto& p : pending) {
    CounterStream draws(cfg.seed, index, static_cast<std::uint32_t>(p.step), p.channel);
    const int outcome = measure_qubit_inplace(psi, p.target, draws.uniform());
    if (outcome) offset |= Eigen::Index{1} << p.target;
    record(outcome, p.step, p.slot);
  }
  Eigen::VectorXcd system = psi.amplitudes().segment(offset, 4);
  rec.final_state = StateVector(kSystemQubits, std::move(system));
  return rec;
}

struct Accumulator {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(4, 4);
  Eigen::MatrixXd sq_re = Eigen::MatrixXd::Zero(4, 4);
  Eigen::MatrixXd sq_im = Eigen::MatrixXd::Zero(4, 4);
  long count = 0;
  std::vector<long> jumps;

  void add(const ShotRecord& rec) {
    const Eigen::VectorXcd& v = rec.final_state.amplitudes();
    const Eigen::MatrixXcd p = v * v.adjoint();
    sum += p;
    sq_re += p.real().cwiseAbs2();
    sq_im += p.imag().cwiseAbs2();
    ++count;
    if (jumps.size() < static_cast<std::size_t>(rec.n_channels)) jumps.resize(rec.n_channels, 0);
    for (std::size_t i = 0; i < rec.jump_log.size(); ++i) jumps[i % rec.n_channels] += rec.jump_log[i];
  }

  void merge(const Accumulator& o) {
    sum += o.sum;
    sq_re += o.sq_re;
    sq_im += o.sq_im;
    count += o.count;
    if (jumps.size() < o.jumps.size()) jumps.resize(o.jumps.size(), 0);
    for (std::size_t i = 0; i < o.jumps.size(); ++i) jumps[i] += o.jumps[i];
  }
};

Eigen::MatrixXd standard_error(const Eigen::MatrixXd& sum, const Eigen::MatrixXd& sq, long n) {
  if (n < 2) return Eigen::MatrixXd::Zero(sum.rows(), sum.cols());
  const double nn = static_cast<double>(n);
  const Eigen::MatrixXd var = ((sq - sum.cwiseAbs2() / nn) / (nn - 1.0)).cwiseMax(0.0);
  return (var / nn).cwiseSqrt();
}

}  // namespace

void TrajectoryConfig::validate() const {
  if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
  if (n_trajectories < 1) throw std::invalid_argument("n_trajectories must be >= 1");
  if (workers < 0) throw std::invalid_argument("workers must be >= 0");
  if (hardware_faithful && n_steps > kHardwareMaxSteps) {
    throw std::invalid_argument("hardware-faithful mode supports at most 4 steps");
  }
  noise.validate();
  qsync::validate(params, variant.jump_convention);
  if (const auto* v = std::get_if<StateVector>(&initial_state)) {
    if (v->n_qubits() != kSystemQubits) throw std::invalid_argument("initial state must be 2 qubits");
    if (std::abs(v->norm() - 1.0) > 1e-10) throw std::invalid_argument("initial state not normalized");
  } else if (const auto* r = std::get_if<DensityMatrix>(&initial_state)) {
    if (r->rows() != 3 && r->rows() != 4) throw std::invalid_argument("initial density must be 3x3 or 4x4");
    check_density_matrix(*r, 1e-10, 1e-10);
  }
}

Eigen::MatrixXd EnsembleStats::standard_errors() const {
  return (se_real.cwiseAbs2() + se_imag.cwiseAbs2()).cwiseSqrt();
}

ShotRecord run_trajectory(const TrajectoryConfig& config, std::uint64_t trajectory_index) {
  return run_planned(config, make_plan(config), trajectory_index);
}

EnsembleStats run_ensemble(const TrajectoryConfig& config) {
  const Plan plan = make_plan(config);
  const long n = config.n_trajectories;
  const long n_blocks = (n + kEnsembleBlock - 1) / kEnsembleBlock;
  std::vector<Accumulator> blocks(static_cast<std::size_t>(n_blocks));

  std::atomic<long> next{0};
  const auto work = [&] {
    for (long b = next++; b < n_blocks; b = next++) {
      Accumulator& acc = blocks[static_cast<std::size_t>(b)];
      const long end = std::min(n, (b + 1) * kEnsembleBlock);
      for (long i = b * kEnsembleBlock; i < end; ++i) {
        acc.add(run_planned(config, plan, static_cast<std::uint64_t>(i)));
      }
    }
  };
  long workers = config.workers > 0 ? config.workers
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n_blocks);
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (long w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  Accumulator total;
  for (const auto& b : blocks) total.merge(b);
  EnsembleStats stats;
  const double nn = static_cast<double>(total.count);
  stats.mean_density = total.sum / nn;
  stats.se_real = standard_error(total.sum.real(), total.sq_re, total.count);
  stats.se_imag = standard_error(total.sum.imag(), total.sq_im, total.count);
  stats.n_samples = total.count;
  stats.jump_counts = total.jumps;
  stats.jump_counts.resize(static_cast<std::size_t>(plan.n_channels), 0);
  return stats;
}

SpinDensity raw_spin_block(const DensityMatrix& rho, const SpinEncoding& enc) {
  if (rho.rows() != 4 || rho.cols() != 4) throw std::invalid_argument("expected a 4x4 density matrix");
  const Eigen::Index x = enc.basis_index(SpinState::surplus);
  const std::array<Eigen::Index, 3> idx{enc.basis_index(SpinState::plus),
                                        enc.basis_index(SpinState::zero),
                                        enc.basis_index(SpinState::minus)};
  SpinDensity out;
  out.leakage.rho_xx = rho(x, x).real();
  for (int r = 0; r < 3; ++r) {
    out.leakage.rho_kx[r] = rho(idx[r], x);
    for (int c = 0; c < 3; ++c) out.rho(r, c) = rho(idx[r], idx[c]);
  }
  out.raw_trace = out.rho.trace().real();
  return out;
}

SpinDensity ensemble_density_matrix(const DensityMatrix& rho, const SpinEncoding& enc) {
  SpinDensity out = raw_spin_block(rho, enc);
  if (out.leakage.rho_xx >= 1.0 - 1e-9) {
    throw std::domain_error("degenerate renormalization: rho_XX is 1");
  }
  out.rho /= 1.0 - out.leakage.rho_xx;
  return out;
}

SpinDensity ensemble_density_matrix(const EnsembleStats& stats, const SpinEncoding& enc) {
  SpinDensity out = ensemble_density_matrix(stats.mean_density, enc);
  const double scale = 1.0 / (1.0 - out.leakage.rho_xx);
  const std::array<Eigen::Index, 3> idx{enc.basis_index(SpinState::plus),
                                        enc.basis_index(SpinState::zero),
                                        enc.basis_index(SpinState::minus)};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out.se_real(r, c) = stats.se_real(idx[r], idx[c]) * scale;
      out.se_imag(r, c) = stats.se_imag(idx[r], idx[c]) * scale;
    }
  }
  return out;
}

DensityMatrix initial_density(const InitialState& state) {
  if (const auto* s = std::get_if<SpinState>(&state)) return encode_basis_state(*s).projector();
  if (const auto* v = std::get_if<StateVector>(&state)) return v->projector();
  const auto& rho = std::get<DensityMatrix>(state);
  return rho.rows() == 3 ? embed_spin_block(rho) : rho;
}

std::vector<DensityMatrix> exact_ensemble_history(const TrajectoryConfig& config) {
  TrajectoryConfig cfg = config;
  cfg.hardware_faithful = false;  // same distribution, smaller register
  const Plan plan = make_plan(cfg);
  const NoiseParams noise = cfg.noise.enabled ? cfg.noise : NoiseParams::none();
  const SpinEncoding enc;
  std::vector<DensityMatrix> history;
  DensityMatrix rho4 = initial_density(cfg.initial_state);
  history.push_back(rho4);
  for (int s = 0; s < cfg.n_steps; ++s) {
    Eigen::MatrixXcd rho = extend_with_zeros(rho4, plan.n_qubits - kSystemQubits);
    run_circuit_density(rho, plan.step(s), noise);
    if (noise.enabled && noise.p_damping > 0.0) {
      apply_amplitude_damping_channel(rho, plan.n_qubits, enc.q1, noise.p_damping);
      apply_amplitude_damping_channel(rho, plan.n_qubits, enc.q0, noise.p_damping);
    }
    rho4 = hermitian_part(reduced_density(rho, plan.n_qubits, {0, 1}));
    history.push_back(rho4);
  }
  return history;
}

DensityMatrix exact_ensemble_density(const TrajectoryConfig& config) {
  return exact_ensemble_history(config).back();
}

}  // namespace qsync
