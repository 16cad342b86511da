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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "criteria.hpp"
#include "qsync/config.hpp"
#include "qsync/experiments.hpp"
#include "qsync/results_io.hpp"

namespace {

struct RunOptions {
  std::string preset;
  std::string config;
  long trajectories = 0;
  std::uint64_t seed = 0;
  std::string noise;
  std::string engine;
  std::string convention;
  std::string signal;
  std::string dissipation;
  std::string trotter;
  int steps = 0;
  bool hardware_faithful = false;
  std::string out;
  std::string format;
  int workers = 0;
};

int run(const RunOptions& o, const CLI::App& cmd) {
  using namespace qsync;
  const auto given = [&](const char* flag) { return cmd.count(flag) > 0; };

  std::string text;
  if (!o.config.empty()) text = read_config_text(o.config);
  std::optional<Preset> preset;
  if (!o.preset.empty()) {
    preset = parse_preset(o.preset);
  } else if (!text.empty()) {
    preset = config_preset(text);
  }
  if (!preset) throw std::invalid_argument("no preset given (positional or in the config file)");

  ExperimentSpec spec = preset_spec(*preset);
  ConfigExtras extras;
  if (!text.empty()) extras = apply_config(text, spec);

  if (given("--trajectories")) spec.trajectories = o.trajectories;
  if (given("--seed")) spec.seed = o.seed;
  if (given("--noise")) spec.noise.enabled = o.noise == "on";
  if (given("--engine")) spec.engine = parse_engine(o.engine);
  if (given("--convention")) spec.variant.jump_convention = parse_convention(o.convention);
  if (given("--signal")) spec.variant.signal_style = parse_signal_style(o.signal);
  if (given("--dissipation")) spec.variant.dissipation_style = parse_dissipation_style(o.dissipation);
  if (given("--trotter")) spec.variant.order = parse_trotter_order(o.trotter);
  if (given("--hardware-faithful")) spec.hardware_faithful = o.hardware_faithful;
  if (given("--workers")) spec.workers = o.workers;
  if (given("--steps")) {
    spec.n_steps = o.steps;
    if (spec.grid.name == "steps") {
      spec.grid.values.clear();
      for (int i = 0; i <= o.steps; ++i) spec.grid.values.push_back(i);
    }
  }
  std::string out = extras.out.value_or("");
  std::string format = extras.format.value_or("csv");
  if (given("--out")) out = o.out;
  if (given("--format")) format = o.format;
  const OutputFormat fmt = parse_format(format);

  for (const auto& w : validate(spec.params, spec.variant.jump_convention)) std::cerr << "warning: " << w << '\n';
  const ResultTable table = run_preset(spec);
  if (out.empty()) {
    if (fmt == OutputFormat::csv) {
      write_csv(std::cout, table);
    } else {
      write_json(std::cout, table);
    }
  } else {
    write_results(table, out, fmt);
    std::cerr << "wrote " << table.rows.size() << " rows to " << out << '\n';
  }
  return 0;
}

int show_circuit(const std::string& name, const std::string& signal) {
  using namespace qsync;
  ExperimentSpec spec = preset_spec(parse_preset(name));
  if (!signal.empty()) spec.variant.signal_style = parse_signal_style(signal);
  const QuantumCircuit step = build_trotter_step(spec.params, spec.variant);
  std::cout << "# " << name << ": one Trotter step (" << step.gate_count() << " gates, "
            << step.controlled_gate_count() << " controlled)\n";
  std::cout << to_text(step);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsync: spin-1 synchronization circuit simulator"};
  app.require_subcommand(1);

  RunOptions o;
  auto* run_cmd = app.add_subcommand("run", "run a preset experiment");
  run_cmd->add_option("preset", o.preset, "preset name (see list-presets)");
  run_cmd->add_option("--config", o.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  run_cmd->add_option("--trajectories", o.trajectories, "trajectories per grid point")->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", o.seed, "random seed");
  run_cmd->add_option("--noise", o.noise, "NISQ noise model")->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_option("--engine", o.engine, "trajectory, oracle or both")
      ->check(CLI::IsMember({"trajectory", "oracle", "both"}));
  run_cmd->add_option("--convention", o.convention, "jump-rate convention")
      ->check(CLI::IsMember({"oracle-consistent", "paper-literal"}));
  run_cmd->add_option("--signal", o.signal, "controlled or uncontrolled signal gates")
      ->check(CLI::IsMember({"controlled", "uncontrolled"}));
  run_cmd->add_option("--dissipation", o.dissipation, "a4 or a5 relaxation circuit")->check(CLI::IsMember({"a4", "a5"}));
  run_cmd->add_option("--trotter", o.trotter, "symmetric or first_order")
      ->check(CLI::IsMember({"symmetric", "first_order"}));
  run_cmd->add_option("--steps", o.steps, "Trotter steps (time-evolution presets: scan 0..N)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_flag("--hardware-faithful", o.hardware_faithful, "fresh ancillas, deferred measurement, N <= 4");
  run_cmd->add_option("--out", o.out, "output file (default stdout)");
  run_cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run_cmd->add_option("--workers", o.workers, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  app.add_subcommand("list-presets", "list preset experiments");

  std::vector<int> criteria;
  int verify_workers = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance criteria");
  verify_cmd->add_option("--criterion", criteria, "criterion number(s), default all")->check(CLI::Range(1, 12));
  verify_cmd->add_option("--workers", verify_workers, "worker threads (0 = all cores)");

  std::string circuit_preset, circuit_signal;
  auto* circuit_cmd = app.add_subcommand("circuit", "print one Trotter step of a preset");
  circuit_cmd->add_option("preset", circuit_preset, "preset name")->required();
  circuit_cmd->add_option("--signal", circuit_signal, "controlled or uncontrolled")
      ->check(CLI::IsMember({"controlled", "uncontrolled"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-presets")) {
      for (qsync::Preset p : qsync::all_presets()) {
        std::cout << qsync::to_string(p) << "\t" << qsync::describe(p) << '\n';
      }
      return 0;
    }
    if (app.got_subcommand("verify")) {
      return qsync::acceptance::run_and_report(criteria, verify_workers) == 0 ? 0 : 1;
    }
    if (app.got_subcommand("circuit")) return show_circuit(circuit_preset, circuit_signal);
    return run(o, *run_cmd);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
