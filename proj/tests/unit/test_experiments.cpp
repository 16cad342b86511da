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

#include <cmath>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "qsync/config.hpp"
#include "qsync/experiments.hpp"
#include "qsync/results_io.hpp"

using namespace qsync;

namespace {

ResultTable sample_table() {
  ResultTable t;
  t.columns = {"steps", "value", "other"};
  t.rows = {{1, 0.1, -3.5e-17}, {2, 1.0 / 3, std::numeric_limits<double>::quiet_NaN()}};
  t.provenance = {{"preset", "onset"}, {"seed", "7"}};
  return t;
}

// NaN-aware equality for round-trip checks.
bool same(const ResultTable& a, const ResultTable& b) {
  if (a.columns != b.columns || a.provenance != b.provenance || a.rows.size() != b.rows.size())
    return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      const double x = a.rows[i][j], y = b.rows[i][j];
      if (!(x == y || (std::isnan(x) && std::isnan(y)))) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("phase distribution") {
  const auto grid = default_phi_grid();
  CHECK(grid.size() == 256);

  Matrix3c diag = Matrix3c::Zero();
  diag.diagonal() << 0.2, 0.5, 0.3;
  const PhaseDistribution d = phase_distribution(diag, grid);
  for (double s : d.s) CHECK(std::abs(s) < 1e-15);

  const double c = 0.1;
  Matrix3c r = diag;
  r(0, 1) = r(1, 0) = c;
  r(1, 2) = r(2, 1) = c;
  const PhaseDistribution p = phase_distribution(r, grid);
  for (std::size_t i = 0; i < grid.size(); ++i)
    CHECK(std::abs(p.s[i] - 3 * c / (4 * std::sqrt(2.0)) * std::cos(grid[i])) < 1e-14);
  CHECK(std::abs(std::remainder(p.argmax, 2 * kPi)) < 1e-9);
  CHECK(p.s_max == doctest::Approx(3 * c / (4 * std::sqrt(2.0))));

  // blockade: equal and opposite drives cancel
  r(1, 2) = r(2, 1) = -c;
  for (double s : phase_distribution(r, grid).s) CHECK(std::abs(s) < 1e-15);
}

TEST_CASE("observables from two-qubit densities") {
  DensityMatrix z = DensityMatrix::Zero(4, 4);
  z(0, 0) = 1;
  const Observables o = observables_from_density(z);
  CHECK(o.populations[1] == 1.0);
  CHECK(o.populations[0] == 0.0);
  CHECK(o.max_coherence() == 0.0);
  CHECK(o.purity == doctest::Approx(1.0));

  const Observables m = observables_from_density(DensityMatrix::Identity(4, 4) / 4.0);
  for (double p : m.populations) CHECK(p * m.raw_trace == doctest::Approx(0.25));
  CHECK(m.rho_xx == doctest::Approx(0.25));
  CHECK(m.max_coherence() == 0.0);

  const auto values = observable_values(o);
  CHECK(values.front().first == "pop_p1");
  CHECK(values.back().first == "raw_trace");
}

TEST_CASE("presets and parsers") {
  CHECK(all_presets().size() == 9);
  for (Preset p : all_presets()) {
    CHECK(parse_preset(to_string(p)) == p);
    CHECK_NOTHROW(preset_spec(p).validate());
  }
  CHECK_THROWS_AS(parse_preset("nope"), std::invalid_argument);
  CHECK(parse_engine("oracle") == Engine::oracle);
  CHECK(parse_convention("paper-literal") == JumpConvention::paper_literal);

  ExperimentSpec bad = preset_spec(Preset::onset);
  bad.grid.name = "bogus";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.grid = {"steps", {1.5}};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.grid = {"steps", {}};
  CHECK_THROWS_AS(run_preset(bad), std::invalid_argument);
}

TEST_CASE("zero signal leaves no coherence") {
  ExperimentSpec s = preset_spec(Preset::strength_scan);
  s.grid.values = {0.0};
  s.trajectories = 500;
  s.workers = 1;
  const ResultTable t = run_preset(s);
  REQUIRE(t.rows.size() == 1);
  for (const char* c : {"traj_abs_rho_10", "traj_abs_rho_0m1", "traj_abs_rho_m11",
                        "oracle_abs_rho_10", "oracle_abs_rho_0m1", "oracle_abs_rho_m11"})
    CHECK(t.column(c)[0] < 1e-12);
}

TEST_CASE("global phase shift rotates the coherence") {
  ExperimentSpec s = preset_spec(Preset::phase_scan_global);
  s.engine = Engine::oracle;
  const ResultTable t = run_preset(s);
  const auto chi = t.column("chi");
  const auto arg = t.column("oracle_arg_rho_10");
  for (std::size_t i = 0; i < chi.size(); ++i)
    CHECK(std::abs(std::remainder(arg[i] - arg[0] - chi[i], 2 * kPi)) < 1e-6);
}

TEST_CASE("onset coherence exceeds the zero-signal floor") {
  ExperimentSpec s = preset_spec(Preset::onset);
  s.trajectories = 4000;
  s.noise = NoiseParams::device_defaults();
  s.workers = 1;
  const ResultTable t = run_preset(s);
  const std::size_t last = t.rows.size() - 1;
  CHECK(t.column("steps")[last] == 4);
  CHECK(t.column("traj_abs_rho_10")[last] > t.column("traj_noise_floor")[last]);
  CHECK(t.column("oracle_abs_rho_10")[last] > t.column("oracle_noise_floor")[last]);
  CHECK(t.has_column("flag_count"));
  CHECK(t.provenance_value("preset") == "onset");
}

TEST_CASE("discrepancy threshold") {
  CHECK(discrepancy_threshold(0.1, 4, 0.2) == doctest::Approx(0.3));
  CHECK(discrepancy_threshold(0.0, 4, 0.2) == doctest::Approx(5 * 4 * 0.008));
  CHECK(discrepancy_threshold(0.0, 0, 0.2) == 1e-9);
}

TEST_CASE("csv round trip") {
  ResultTable empty;
  empty.columns = {"steps", "value"};
  std::stringstream e;
  write_csv(e, empty);
  std::string line, last;
  while (std::getline(e, line)) last = line;
  CHECK(last == "steps,value");
  std::stringstream e2(e.str());
  CHECK(read_csv(e2) == empty);

  ResultTable one = sample_table();
  one.rows.resize(1);
  std::stringstream o;
  write_csv(o, one);
  CHECK(read_csv(o) == one);

  std::stringstream t;
  write_csv(t, sample_table());
  CHECK(same(read_csv(t), sample_table()));

  ExperimentSpec s = preset_spec(Preset::detuning_scan);
  s.engine = Engine::oracle;
  const ResultTable d = run_preset(s);
  std::stringstream ds;
  write_csv(ds, d);
  CHECK(same(read_csv(ds), d));
}

TEST_CASE("json round trip") {
  std::stringstream j;
  write_json(j, sample_table());
  CHECK(same(read_json(j), sample_table()));
  CHECK(parse_format("json") == OutputFormat::json);
  CHECK_THROWS(parse_format("xml"));
}

TEST_CASE("config file values and overrides") {
  ExperimentSpec s = preset_spec(Preset::onset);
  const std::string text = R"({
    "preset": "detuning_scan",
    "trajectories": 123,
    "seed": 9,
    "params": {"delta": 0.3, "j_01": {"abs": 2, "arg": 0.5}},
    "grid": {"name": "epsilon", "values": [0.1, 0.2]},
    "out": "x.csv"
  })";
  CHECK(config_preset(text) == Preset::detuning_scan);
  const ConfigExtras extras = apply_config(text, s);
  CHECK(s.trajectories == 123);
  CHECK(s.seed == 9);
  CHECK(s.params.delta == 0.3);
  CHECK(std::abs(s.params.j_01 - std::polar(2.0, 0.5)) < 1e-15);
  CHECK(s.grid.name == "epsilon");
  CHECK(s.grid.values.size() == 2);
  CHECK(extras.out == "x.csv");

  apply_config(R"({"noise": true})", s);
  CHECK(s.noise == NoiseParams::device_defaults());
  apply_config(R"({"noise": {"p_cnot": 0.05}})", s);
  CHECK(s.noise.p_cnot == 0.05);
  CHECK(s.noise.enabled);

  CHECK_THROWS(apply_config(R"({"trajectorys": 5})", s));
  CHECK_THROWS(apply_config(R"({"params": {"omega": 1}})", s));
  CHECK_THROWS(apply_config("{not json", s));
}
