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
#include <string>
#include <utility>
#include <vector>

#include "qsync/noise.hpp"
#include "qsync/spin1.hpp"
#include "qsync/trajectory.hpp"

namespace qsync {

inline constexpr int kDefaultPhiPoints = 256;

/// n points on [0, 2pi).
std::vector<double> default_phi_grid(int n = kDefaultPhiPoints);

struct PhaseDistribution {
  std::vector<double> phi;
  std::vector<double> s;
  double s_max = 0.0;
  /// Grid argmax refined by Newton steps on dS/dphi, in [0, 2pi).
  double argmax = 0.0;
};

/// S(phi) = 3/(8 sqrt2) |r10 + r0m1| cos(phi + arg(r10 + r0m1))
///        + 1/(2 pi) |r1m1| cos(2 phi + arg r1m1), rho in (+1, 0, -1) order.
PhaseDistribution phase_distribution(const Matrix3c& rho, const std::vector<double>& phi_grid);

struct Observables {
  std::array<double, 3> populations{};  ///< +1, 0, -1
  Complex rho_10{};                     ///< <+1|rho|0>
  Complex rho_0m1{};                    ///< <0|rho|-1>
  Complex rho_m11{};                    ///< <-1|rho|+1>
  double rho_xx = 0.0;
  std::array<Complex, 3> rho_kx{};  ///< <k|rho|X>, k = +1, 0, -1
  double raw_trace = 0.0;
  double purity = 0.0;  ///< of the renormalized spin state
  double s_max = 0.0;
  double argmax_phi = 0.0;

  /// Largest spin-coherence modulus; the noise-floor radius when taken
  /// from an epsilon = 0 reference run.
  double max_coherence() const;
};

/// When rho_XX >= 1 - 1e-9 the spin block cannot be renormalized; the raw
/// block is reported instead (raw_trace ~ 0 marks such rows).
Observables observables_from_density(const DensityMatrix& rho_2q,
                                      const std::vector<double>& phi_grid = default_phi_grid());

/// Named scalar view in a fixed column order. Names starting with "arg" or
/// equal to "argmax_phi" are angles.
std::vector<std::pair<std::string, double>> observable_values(const Observables& obs);

/// Standard errors matching observable_values, propagated to first order
/// from the entrywise ensemble errors.
std::vector<double> observable_errors(const Observables& obs, const EnsembleStats& stats);

enum class Preset {
  signal_only,
  stabilization,
  onset,
  detuning_scan,
  strength_scan,
  phase_scan_global,
  blockade_scan,
  leakage_check,
  stabilization_from_excited,
};

const std::vector<Preset>& all_presets();
const char* to_string(Preset p);
Preset parse_preset(const std::string& name);
const char* describe(Preset p);

enum class Engine { trajectory, oracle, both };
const char* to_string(Engine e);
Engine parse_engine(const std::string& name);

JumpConvention parse_convention(const std::string& name);
SignalStyle parse_signal_style(const std::string& name);
DissipationStyle parse_dissipation_style(const std::string& name);
TrotterOrder parse_trotter_order(const std::string& name);
SpinState parse_spin_state(const std::string& name);

/// Scannable names: delta, epsilon, gamma_10, gamma_m10, dt, chi, steps.
struct ParameterGrid {
  std::string name = "steps";
  std::vector<double> values;
};

struct ExperimentSpec {
  Preset preset = Preset::onset;
  SpinModelParams params{};
  ParameterGrid grid{};
  long trajectories = 10000;
  std::uint64_t seed = 1;
  NoiseParams noise = NoiseParams::none();
  Engine engine = Engine::both;
  TrotterVariant variant{};
  int n_steps = 4;
  bool hardware_faithful = false;
  std::vector<SpinState> initial_states{SpinState::zero};
  int workers = 0;
  /// Run an epsilon = 0 companion per row and report its largest coherence.
  bool noise_floor = true;
  int phi_points = kDefaultPhiPoints;

  /// Throws std::invalid_argument (unknown grid name, bad values, ...).
  void validate() const;
};

/// Caption parameters of the figure each preset mirrors (time unit 1/Gamma_{1,0}).
ExperimentSpec preset_spec(Preset p);

/// Applies one grid value to a copy of the parameters. chi rotates the drive
/// phases: blockade_scan multiplies j_0m1 by e^{i chi}, every other preset
/// rotates j_01 -> e^{i chi} j_01 and j_0m1 -> e^{-i chi} j_0m1 (a rotation
/// of the drive frame, which advances arg rho_10 and arg rho_0m1 by chi).
/// steps is handled by the caller.
SpinModelParams apply_grid_value(const ExperimentSpec& spec, SpinModelParams params,
                                 const std::string& name, double value);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Ordered key/value pairs written as the comment block / metadata object.
  std::vector<std::pair<std::string, std::string>> provenance;

  std::size_t column_index(const std::string& name) const;  ///< throws std::out_of_range
  std::vector<double> column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  std::string provenance_value(const std::string& key) const;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Oracle density matrix (4x4 encoded register) at time n_steps * dt.
DensityMatrix oracle_density(const SpinModelParams& params, SignalStyle style, SpinState initial,
                             int n_steps);

/// Allowed |trajectory - oracle| gap: max(3 sigma, 5 N dt^3, 1e-9).
double discrepancy_threshold(double sigma, int n_steps, double dt);

ResultTable run_preset(const ExperimentSpec& spec);

/// Build identification used in output provenance.
const char* git_describe();

}  // namespace qsync
