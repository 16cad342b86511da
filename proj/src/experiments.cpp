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

#include "qsync/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "qsync/lindblad.hpp"

#ifndef QSYNC_GIT_DESCRIBE
#define QSYNC_GIT_DESCRIBE "unknown"
#endif

namespace qsync {

namespace {

constexpr double kSmall = 1e-12;

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  return a < 0 ? a + 2 * kPi : a;
}

// |a - b| on the circle
double angle_gap(double a, double b) {
  const double d = wrap_angle(a - b);
  return std::min(d, 2 * kPi - d);
}

double abs_error(Complex z, double se_re, double se_im) {
  const double r = std::abs(z);
  if (r < kSmall) return std::hypot(se_re, se_im);
  return std::hypot(z.real() * se_re, z.imag() * se_im) / r;
}

double arg_error(Complex z, double se_re, double se_im) {
  const double r = std::abs(z);
  if (r < kSmall) return kPi;
  return std::min(kPi, std::hypot(z.imag() * se_re, z.real() * se_im) / (r * r));
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt(Complex z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

double initial_code(SpinState s) {
  switch (s) {
    case SpinState::plus:
      return 1;
    case SpinState::zero:
      return 0;
    case SpinState::minus:
      return -1;
    case SpinState::surplus:
      return 2;
  }
  return 0;
}

// arg_* columns and argmax_phi
bool is_angle(const std::string& name) { return name.rfind("arg", 0) == 0; }

std::vector<double> linspace(double lo, double hi, int n, bool endpoint = true) {
  std::vector<double> v;
  const double step = (hi - lo) / (endpoint ? n - 1 : n);
  for (int i = 0; i < n; ++i) v.push_back(lo + step * i);
  if (endpoint) v.back() = hi;
  return v;
}

std::vector<double> step_grid(int last) {
  std::vector<double> v;
  for (int i = 0; i <= last; ++i) v.push_back(i);
  return v;
}

}  // namespace

std::vector<double> default_phi_grid(int n) {
  if (n < 1) throw std::invalid_argument("phi grid needs at least one point");
  return linspace(0.0, 2 * kPi, n, false);
}

PhaseDistribution phase_distribution(const Matrix3c& rho, const std::vector<double>& phi_grid) {
  const Complex first = rho(0, 1) + rho(1, 2);
  const Complex second = rho(0, 2);
  const double a = 3.0 / (8.0 * std::sqrt(2.0)) * std::abs(first);
  const double alpha = std::arg(first);
  const double b = std::abs(second) / (2 * kPi);
  const double beta = std::arg(second);
  const auto s_of = [&](double phi) { return a * std::cos(phi + alpha) + b * std::cos(2 * phi + beta); };

  PhaseDistribution out;
  out.phi = phi_grid;
  out.s.reserve(phi_grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < phi_grid.size(); ++i) {
    out.s.push_back(s_of(phi_grid[i]));
    if (out.s[i] > out.s[best]) best = i;
  }
  if (phi_grid.empty()) return out;
  out.s_max = out.s[best];
  out.argmax = wrap_angle(phi_grid[best]);
  if (a + b == 0.0) return out;  // flat: keep the first grid point
  // polish the grid maximum
  double phi = phi_grid[best];
  for (int it = 0; it < 30; ++it) {
    const double d1 = -a * std::sin(phi + alpha) - 2 * b * std::sin(2 * phi + beta);
    const double d2 = -a * std::cos(phi + alpha) - 4 * b * std::cos(2 * phi + beta);
    if (d2 >= 0.0) break;
    const double next = phi - d1 / d2;
    if (std::abs(next - phi) < 1e-15) break;
    phi = next;
  }
  if (s_of(phi) >= out.s_max) {
    out.s_max = std::max(out.s_max, s_of(phi));
    out.argmax = wrap_angle(phi);
  }
  return out;
}

double Observables::max_coherence() const {
  return std::max({std::abs(rho_10), std::abs(rho_0m1), std::abs(rho_m11)});
}

Observables observables_from_density(const DensityMatrix& rho_2q, const std::vector<double>& phi_grid) {
  check_density_matrix(rho_2q, 1e-9, 1e-9);
  const SpinDensity raw = raw_spin_block(rho_2q);
  const bool degenerate = raw.leakage.rho_xx >= 1.0 - 1e-9;
  const SpinDensity spin = degenerate ? raw : ensemble_density_matrix(rho_2q);
  Observables o;
  for (int k = 0; k < 3; ++k) o.populations[k] = spin.rho(k, k).real();
  o.rho_10 = spin.rho(0, 1);
  o.rho_0m1 = spin.rho(1, 2);
  o.rho_m11 = spin.rho(2, 0);
  o.rho_xx = spin.leakage.rho_xx;
  o.rho_kx = spin.leakage.rho_kx;
  o.raw_trace = spin.raw_trace;
  o.purity = purity(spin.rho);
  const PhaseDistribution s = phase_distribution(spin.rho, phi_grid);
  o.s_max = s.s_max;
  o.argmax_phi = s.argmax;
  return o;
}

std::vector<std::pair<std::string, double>> observable_values(const Observables& o) {
  std::vector<std::pair<std::string, double>> v{
      {"pop_p1", o.populations[0]},
      {"pop_0", o.populations[1]},
      {"pop_m1", o.populations[2]},
  };
  const auto coherence = [&](const std::string& name, Complex z) {
    v.emplace_back("re_" + name, z.real());
    v.emplace_back("im_" + name, z.imag());
    v.emplace_back("abs_" + name, std::abs(z));
    v.emplace_back("arg_" + name, std::arg(z));
  };
  coherence("rho_10", o.rho_10);
  coherence("rho_0m1", o.rho_0m1);
  coherence("rho_m11", o.rho_m11);
  v.emplace_back("s_max", o.s_max);
  v.emplace_back("argmax_phi", o.argmax_phi);
  v.emplace_back("rho_XX", o.rho_xx);
  v.emplace_back("abs_rho_p1X", std::abs(o.rho_kx[0]));
  v.emplace_back("abs_rho_0X", std::abs(o.rho_kx[1]));
  v.emplace_back("abs_rho_m1X", std::abs(o.rho_kx[2]));
  v.emplace_back("purity", o.purity);
  v.emplace_back("raw_trace", o.raw_trace);
  return v;
}

std::vector<double> observable_errors(const Observables& o, const EnsembleStats& stats) {
  SpinDensity spin;
  if (raw_spin_block(stats.mean_density).leakage.rho_xx >= 1.0 - 1e-9) {
    // degenerate row: errors of the raw block
    const std::array<Eigen::Index, 3> idx{kSpinIndices[0], kSpinIndices[1], kSpinIndices[2]};
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        spin.se_real(r, c) = stats.se_real(idx[r], idx[c]);
        spin.se_imag(r, c) = stats.se_imag(idx[r], idx[c]);
      }
    }
  } else {
    spin = ensemble_density_matrix(stats);
  }
  const auto& sr = spin.se_real;
  const auto& si = spin.se_imag;
  std::vector<double> e{sr(0, 0), sr(1, 1), sr(2, 2)};
  const auto coherence = [&](Complex z, int r, int c) {
    e.push_back(sr(r, c));
    e.push_back(si(r, c));
    e.push_back(abs_error(z, sr(r, c), si(r, c)));
    e.push_back(arg_error(z, sr(r, c), si(r, c)));
  };
  coherence(o.rho_10, 0, 1);
  coherence(o.rho_0m1, 1, 2);
  coherence(o.rho_m11, 2, 0);
  // first harmonic dominates S; entries treated as independent
  const Complex first = o.rho_10 + o.rho_0m1;
  const double first_re = std::hypot(sr(0, 1), sr(1, 2));
  const double first_im = std::hypot(si(0, 1), si(1, 2));
  e.push_back(3.0 / (8.0 * std::sqrt(2.0)) * abs_error(first, first_re, first_im) +
              abs_error(o.rho_m11, sr(2, 0), si(2, 0)) / (2 * kPi));
  e.push_back(arg_error(first, first_re, first_im));
  const SpinEncoding enc;
  const Eigen::Index x = enc.basis_index(SpinState::surplus);
  e.push_back(stats.se_real(x, x));
  const std::array<SpinState, 3> levels{SpinState::plus, SpinState::zero, SpinState::minus};
  for (int k = 0; k < 3; ++k) {
    const Eigen::Index i = enc.basis_index(levels[k]);
    e.push_back(abs_error(o.rho_kx[k], stats.se_real(i, x), stats.se_imag(i, x)));
  }
  double purity_var = 0.0;
  const Eigen::Matrix3d se2 = sr.cwiseAbs2() + si.cwiseAbs2();
  // d Tr(rho^2) = 2 sum rho_ji d rho_ij; moduli taken from the populations
  // and coherences carried in `o`
  const std::array<std::array<double, 3>, 3> mod{{
      {o.populations[0], std::abs(o.rho_10), std::abs(o.rho_m11)},
      {std::abs(o.rho_10), o.populations[1], std::abs(o.rho_0m1)},
      {std::abs(o.rho_m11), std::abs(o.rho_0m1), o.populations[2]},
  }};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) purity_var += 4.0 * mod[r][c] * mod[r][c] * se2(r, c);
  }
  e.push_back(std::sqrt(purity_var));
  double trace_var = 0.0;
  for (int k = 0; k < 3; ++k) trace_var += sr(k, k) * sr(k, k);
  e.push_back(std::sqrt(trace_var));
  return e;
}

const std::vector<Preset>& all_presets() {
  static const std::vector<Preset> presets{
      Preset::signal_only,       Preset::stabilization,   Preset::onset,
      Preset::detuning_scan,     Preset::strength_scan,   Preset::phase_scan_global,
      Preset::blockade_scan,     Preset::leakage_check,   Preset::stabilization_from_excited,
  };
  return presets;
}

const char* to_string(Preset p) {
  switch (p) {
    case Preset::signal_only:
      return "signal_only";
    case Preset::stabilization:
      return "stabilization";
    case Preset::onset:
      return "onset";
    case Preset::detuning_scan:
      return "detuning_scan";
    case Preset::strength_scan:
      return "strength_scan";
    case Preset::phase_scan_global:
      return "phase_scan_global";
    case Preset::blockade_scan:
      return "blockade_scan";
    case Preset::leakage_check:
      return "leakage_check";
    case Preset::stabilization_from_excited:
      return "stabilization_from_excited";
  }
  return "?";
}

const char* describe(Preset p) {
  switch (p) {
    case Preset::signal_only:
      return "signal drive on |0> without dissipation, 30 steps";
    case Preset::stabilization:
      return "dissipative stabilization of |0>, no signal";
    case Preset::onset:
      return "onset of synchronization: signal plus stabilization";
    case Preset::detuning_scan:
      return "phase distribution peak vs detuning after 3 steps";
    case Preset::strength_scan:
      return "populations and coherences vs signal strength after 3 steps";
    case Preset::phase_scan_global:
      return "coherence phases vs global signal phase chi";
    case Preset::blockade_scan:
      return "interference blockade: phase of the -1 signal only";
    case Preset::leakage_check:
      return "surplus-state leakage with uncontrolled signal gates";
    case Preset::stabilization_from_excited:
      return "stabilization from |+1>, |-1> and |X>";
  }
  return "";
}

Preset parse_preset(const std::string& name) {
  for (Preset p : all_presets()) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

const char* to_string(Engine e) {
  switch (e) {
    case Engine::trajectory:
      return "trajectory";
    case Engine::oracle:
      return "oracle";
    case Engine::both:
      return "both";
  }
  return "?";
}

Engine parse_engine(const std::string& name) {
  if (name == "trajectory") return Engine::trajectory;
  if (name == "oracle") return Engine::oracle;
  if (name == "both") return Engine::both;
  throw std::invalid_argument("unknown engine '" + name + "'");
}

JumpConvention parse_convention(const std::string& name) {
  if (name == "oracle-consistent" || name == "oracle_consistent") return JumpConvention::oracle_consistent;
  if (name == "paper-literal" || name == "paper_literal") return JumpConvention::paper_literal;
  throw std::invalid_argument("unknown convention '" + name + "'");
}

SignalStyle parse_signal_style(const std::string& name) {
  if (name == "controlled") return SignalStyle::controlled;
  if (name == "uncontrolled") return SignalStyle::uncontrolled;
  throw std::invalid_argument("unknown signal style '" + name + "'");
}

DissipationStyle parse_dissipation_style(const std::string& name) {
  if (name == "ccu_circuit_a4" || name == "a4") return DissipationStyle::ccu_circuit_a4;
  if (name == "two_cnot_circuit_a5" || name == "a5") return DissipationStyle::two_cnot_circuit_a5;
  throw std::invalid_argument("unknown dissipation style '" + name + "'");
}

TrotterOrder parse_trotter_order(const std::string& name) {
  if (name == "symmetric") return TrotterOrder::symmetric;
  if (name == "first_order" || name == "first-order") return TrotterOrder::first_order;
  throw std::invalid_argument("unknown trotter order '" + name + "'");
}

SpinState parse_spin_state(const std::string& name) {
  if (name == "+1" || name == "plus" || name == "1") return SpinState::plus;
  if (name == "0" || name == "zero") return SpinState::zero;
  if (name == "-1" || name == "minus") return SpinState::minus;
  if (name == "X" || name == "surplus") return SpinState::surplus;
  throw std::invalid_argument("unknown spin state '" + name + "'");
}

void ExperimentSpec::validate() const {
  static const std::vector<std::string> names{"delta", "epsilon", "gamma_10", "gamma_m10",
                                              "dt",    "chi",     "steps"};
  if (std::find(names.begin(), names.end(), grid.name) == names.end()) {
    throw std::invalid_argument("invalid grid: unknown parameter '" + grid.name + "'");
  }
  if (grid.values.empty()) throw std::invalid_argument("invalid grid: no values");
  for (double v : grid.values) {
    if (!std::isfinite(v)) throw std::invalid_argument("invalid grid: non-finite value");
    if (grid.name == "steps" && (v < 0 || v != std::floor(v))) {
      throw std::invalid_argument("invalid grid: steps must be nonnegative integers");
    }
    if ((grid.name == "epsilon" || grid.name.rfind("gamma", 0) == 0) && v < 0) {
      throw std::invalid_argument("invalid grid: negative " + grid.name);
    }
    if (grid.name == "dt" && v <= 0) throw std::invalid_argument("invalid grid: dt must be positive");
  }
  if (n_steps < 0) throw std::invalid_argument("steps must be >= 0");
  if (engine != Engine::oracle && trajectories < 1) {
    throw std::invalid_argument("trajectories must be >= 1");
  }
  if (initial_states.empty()) throw std::invalid_argument("no initial states");
  if (phi_points < 1) throw std::invalid_argument("phi_points must be >= 1");
  if (hardware_faithful) {
    const double max_steps = grid.name == "steps"
                                 ? *std::max_element(grid.values.begin(), grid.values.end())
                                 : n_steps;
    if (max_steps > kHardwareMaxSteps) {
      throw std::invalid_argument("hardware-faithful mode supports at most 4 steps");
    }
  }
  noise.validate();
  qsync::validate(params, variant.jump_convention);
}

ExperimentSpec preset_spec(Preset p) {
  ExperimentSpec s;
  s.preset = p;
  SpinModelParams& m = s.params;
  // Gamma_{1,0} = 1 sets the time unit; Gamma_{1,0} dt = 0.2
  m.gamma_10 = 1.0;
  m.gamma_m10 = 1.0;
  m.dt = 0.2;
  m.epsilon = 0.25;
  const auto j = [](double mag, double phase) { return std::polar(mag, phase); };
  switch (p) {
    case Preset::signal_only:
      m = {};
      m.epsilon = 1.0;
      m.dt = 0.1;
      m.j_0m1 = j(0.5, -kPi / 6);
      m.j_01 = j(1.0, 5 * kPi / 6);
      s.grid = {"steps", step_grid(30)};
      s.noise_floor = false;
      break;
    case Preset::stabilization:
      s.grid = {"steps", step_grid(4)};
      break;
    case Preset::onset:
      m.j_0m1 = j(1.0, 2 * kPi / 6);
      m.j_01 = j(2.0, -kPi / 6);
      s.grid = {"steps", step_grid(4)};
      break;
    case Preset::detuning_scan:
      m.j_0m1 = j(2.0, 2 * kPi / 6);
      m.j_01 = j(2.0, -kPi / 6);
      s.n_steps = 3;
      s.grid = {"delta", linspace(-1.0, 1.0, 21)};
      break;
    case Preset::strength_scan:
      m.j_0m1 = j(2.0, 2 * kPi / 6);
      m.j_01 = j(2.0, -kPi / 6);
      s.n_steps = 3;
      s.grid = {"epsilon", linspace(0.0, 0.4, 9)};
      break;
    case Preset::phase_scan_global:
      m.gamma_m10 = 1.25;
      m.j_01 = j(2.0, -2 * kPi / 6);
      m.j_0m1 = j(2.0, -2 * kPi / 6);
      s.n_steps = 3;
      s.grid = {"chi", linspace(0.0, 2 * kPi, 24, false)};
      break;
    case Preset::blockade_scan:
      m.gamma_m10 = 1.25;
      m.j_01 = j(2.0, -2 * kPi / 6);
      m.j_0m1 = j(2.0, -2 * kPi / 6);
      s.n_steps = 3;
      s.grid = {"chi", linspace(0.0, 2 * kPi, 36, false)};
      break;
    case Preset::leakage_check:
      m.j_0m1 = j(1.0, 2 * kPi / 6);
      m.j_01 = j(2.0, -kPi / 6);
      s.variant.signal_style = SignalStyle::uncontrolled;
      s.grid = {"steps", step_grid(4)};
      break;
    case Preset::stabilization_from_excited:
      s.initial_states = {SpinState::plus, SpinState::minus, SpinState::surplus};
      s.grid = {"steps", step_grid(4)};
      break;
  }
  return s;
}

SpinModelParams apply_grid_value(const ExperimentSpec& spec, SpinModelParams p,
                                 const std::string& name, double v) {
  if (name == "delta") {
    p.delta = v;
  } else if (name == "epsilon") {
    p.epsilon = v;
  } else if (name == "gamma_10") {
    p.gamma_10 = v;
  } else if (name == "gamma_m10") {
    p.gamma_m10 = v;
  } else if (name == "dt") {
    p.dt = v;
  } else if (name == "chi") {
    if (spec.preset == Preset::blockade_scan) {
      p.j_0m1 *= std::polar(1.0, v);
    } else {
      p.j_01 *= std::polar(1.0, v);
      p.j_0m1 *= std::polar(1.0, -v);
    }
  } else if (name != "steps") {
    throw std::invalid_argument("invalid grid: unknown parameter '" + name + "'");
  }
  return p;
}

std::size_t ResultTable::column_index(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

bool ResultTable::has_column(const std::string& name) const {
  return std::find(columns.begin(), columns.end(), name) != columns.end();
}

std::vector<double> ResultTable::column(const std::string& name) const {
  const std::size_t c = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.at(c));
  return out;
}

std::string ResultTable::provenance_value(const std::string& key) const {
  for (const auto& [k, v] : provenance) {
    if (k == key) return v;
  }
  throw std::out_of_range("no provenance key '" + key + "'");
}

DensityMatrix oracle_density(const SpinModelParams& params, SignalStyle style, SpinState initial,
                             int n_steps) {
  const LindbladModel model = encoded_model(params, style);
  return integrate_lindblad(model, encode_basis_state(initial).projector(), n_steps * params.dt);
}

double discrepancy_threshold(double sigma, int n_steps, double dt) {
  return std::max({3.0 * sigma, 5.0 * n_steps * dt * dt * dt, 1e-9});
}

const char* git_describe() { return QSYNC_GIT_DESCRIBE; }

ResultTable run_preset(const ExperimentSpec& spec) {
  spec.validate();
  const bool use_traj = spec.engine != Engine::oracle;
  const bool use_oracle = spec.engine != Engine::trajectory;
  const std::vector<double> phi = default_phi_grid(spec.phi_points);

  std::vector<std::string> names;
  for (const auto& [name, value] : observable_values(Observables{})) names.push_back(name);

  ResultTable table;
  table.columns.push_back(spec.grid.name);
  table.columns.push_back("initial");
  if (spec.grid.name != "steps") table.columns.push_back("steps");
  table.columns.push_back("time");
  if (use_traj) {
    for (const auto& n : names) {
      table.columns.push_back("traj_" + n);
      table.columns.push_back("traj_" + n + "_se");
    }
    if (spec.noise_floor) table.columns.push_back("traj_noise_floor");
  }
  if (use_oracle) {
    for (const auto& n : names) table.columns.push_back("oracle_" + n);
    if (spec.noise_floor) table.columns.push_back("oracle_noise_floor");
  }
  if (use_traj && use_oracle) {
    for (const auto& n : names) table.columns.push_back("flag_" + n);
    table.columns.push_back("flag_count");
  }

  const SpinModelParams& p = spec.params;
  std::ostringstream params;
  params << "delta=" << fmt(p.delta) << ";epsilon=" << fmt(p.epsilon)
         << ";gamma_10=" << fmt(p.gamma_10) << ";gamma_m10=" << fmt(p.gamma_m10)
         << ";dt=" << fmt(p.dt) << ";j_01=" << fmt(p.j_01) << ";j_0m1=" << fmt(p.j_0m1)
         << ";j_m11=" << fmt(p.j_m11);
  std::ostringstream noise;
  if (spec.noise.enabled) {
    noise << "on;p_cnot=" << fmt(spec.noise.p_cnot) << ";p_1q=" << fmt(spec.noise.p_1q)
          << ";p_read0=" << fmt(spec.noise.p_read0) << ";p_read1=" << fmt(spec.noise.p_read1)
          << ";p_damping=" << fmt(spec.noise.p_damping);
  } else {
    noise << "off";
  }
  std::string initial;
  for (SpinState s : spec.initial_states) initial += std::string(initial.empty() ? "" : ";") + to_string(s);
  table.provenance = {
      {"preset", to_string(spec.preset)},
      {"engine", to_string(spec.engine)},
      {"seed", std::to_string(spec.seed)},
      {"convention", to_string(spec.variant.jump_convention)},
      {"signal_style", to_string(spec.variant.signal_style)},
      {"dissipation_style", to_string(spec.variant.dissipation_style)},
      {"trotter_order", to_string(spec.variant.order)},
      {"trajectories", use_traj ? std::to_string(spec.trajectories) : "0"},
      {"steps", std::to_string(spec.n_steps)},
      {"hardware_faithful", spec.hardware_faithful ? "true" : "false"},
      {"noise", noise.str()},
      {"params", params.str()},
      {"grid", spec.grid.name},
      {"initial_states", initial},
      {"initial_code", "+1=1;0=0;-1=-1;X=2"},
      {"phi_points", std::to_string(spec.phi_points)},
      {"git_describe", git_describe()},
  };

  const auto trajectory_run = [&](const SpinModelParams& params_v, SpinState init, int n) {
    TrajectoryConfig cfg;
    cfg.n_steps = n;
    cfg.n_trajectories = spec.trajectories;
    cfg.seed = spec.seed;
    cfg.params = params_v;
    cfg.variant = spec.variant;
    cfg.initial_state = init;
    cfg.noise = spec.noise;
    cfg.hardware_faithful = spec.hardware_faithful;
    cfg.workers = spec.workers;
    return run_ensemble(cfg);
  };

  for (SpinState init : spec.initial_states) {
    for (double v : spec.grid.values) {
      const SpinModelParams pv = apply_grid_value(spec, spec.params, spec.grid.name, v);
      const int n = spec.grid.name == "steps" ? static_cast<int>(v) : spec.n_steps;
      SpinModelParams dark = pv;
      dark.epsilon = 0.0;

      std::vector<double> row{v, initial_code(init)};
      if (spec.grid.name != "steps") row.push_back(n);
      row.push_back(n * pv.dt);

      std::vector<double> traj_vals, traj_errs;
      if (use_traj) {
        const EnsembleStats stats = trajectory_run(pv, init, n);
        const Observables obs = observables_from_density(stats.mean_density, phi);
        traj_errs = observable_errors(obs, stats);
        for (const auto& [name, value] : observable_values(obs)) traj_vals.push_back(value);
        for (std::size_t i = 0; i < traj_vals.size(); ++i) {
          row.push_back(traj_vals[i]);
          row.push_back(traj_errs[i]);
        }
        if (spec.noise_floor) {
          const EnsembleStats ref = trajectory_run(dark, init, n);
          row.push_back(observables_from_density(ref.mean_density, phi).max_coherence());
        }
      }
      std::vector<double> oracle_vals;
      if (use_oracle) {
        const Observables obs =
            observables_from_density(oracle_density(pv, spec.variant.signal_style, init, n), phi);
        for (const auto& [name, value] : observable_values(obs)) oracle_vals.push_back(value);
        row.insert(row.end(), oracle_vals.begin(), oracle_vals.end());
        if (spec.noise_floor) {
          row.push_back(observables_from_density(
                            oracle_density(dark, spec.variant.signal_style, init, n), phi)
                            .max_coherence());
        }
      }
      if (use_traj && use_oracle) {
        int flagged = 0;
        for (std::size_t i = 0; i < names.size(); ++i) {
          const double gap = is_angle(names[i]) ? angle_gap(traj_vals[i], oracle_vals[i])
                                                : std::abs(traj_vals[i] - oracle_vals[i]);
          const bool flag = gap > discrepancy_threshold(traj_errs[i], n, pv.dt);
          flagged += flag;
          row.push_back(flag ? 1.0 : 0.0);
        }
        row.push_back(flagged);
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace qsync
