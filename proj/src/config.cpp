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

#include "qsync/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsync {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw std::invalid_argument("config: unknown key '" + where + key + "'");
  }
}

Complex complex_from(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.contains("abs")) {
    reject_unknown(j, {"abs", "arg"}, "complex.");
    return std::polar(j.at("abs").get<double>(), j.value("arg", 0.0));
  }
  reject_unknown(j, {"re", "im"}, "complex.");
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

template <typename T>
void set_if(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

}  // namespace

std::string read_config_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<Preset> config_preset(const std::string& text) {
  const json j = parse(text);
  if (!j.contains("preset")) return std::nullopt;
  return parse_preset(j.at("preset").get<std::string>());
}

ConfigExtras apply_config(const std::string& text, ExperimentSpec& spec) {
  const json j = parse(text);
  reject_unknown(j,
                 {"preset", "params", "grid", "trajectories", "seed", "noise", "engine",
                  "convention", "signal_style", "dissipation_style", "trotter_order", "steps",
                  "hardware_faithful", "initial_states", "workers", "noise_floor", "phi_points",
                  "out", "format"},
                 "");
  ConfigExtras extras;
  try {
    if (j.contains("params")) {
      const json& p = j.at("params");
      reject_unknown(p, {"delta", "epsilon", "gamma_10", "gamma_m10", "dt", "j_01", "j_0m1", "j_m11"},
                     "params.");
      set_if(p, "delta", spec.params.delta);
      set_if(p, "epsilon", spec.params.epsilon);
      set_if(p, "gamma_10", spec.params.gamma_10);
      set_if(p, "gamma_m10", spec.params.gamma_m10);
      set_if(p, "dt", spec.params.dt);
      if (p.contains("j_01")) spec.params.j_01 = complex_from(p.at("j_01"));
      if (p.contains("j_0m1")) spec.params.j_0m1 = complex_from(p.at("j_0m1"));
      if (p.contains("j_m11")) spec.params.j_m11 = complex_from(p.at("j_m11"));
    }
    if (j.contains("grid")) {
      const json& g = j.at("grid");
      reject_unknown(g, {"name", "values"}, "grid.");
      set_if(g, "name", spec.grid.name);
      set_if(g, "values", spec.grid.values);
    }
    if (j.contains("noise")) {
      const json& n = j.at("noise");
      // shorthand: true = device defaults, false = noiseless
      if (n.is_boolean()) {
        spec.noise = n.get<bool>() ? NoiseParams::device_defaults() : NoiseParams::none();
      } else {
        reject_unknown(n, {"enabled", "p_cnot", "p_1q", "p_read0", "p_read1", "p_damping"}, "noise.");
        set_if(n, "enabled", spec.noise.enabled);
        set_if(n, "p_cnot", spec.noise.p_cnot);
        set_if(n, "p_1q", spec.noise.p_1q);
        set_if(n, "p_read0", spec.noise.p_read0);
        set_if(n, "p_read1", spec.noise.p_read1);
        set_if(n, "p_damping", spec.noise.p_damping);
      }
    }
    set_if(j, "trajectories", spec.trajectories);
    set_if(j, "seed", spec.seed);
    set_if(j, "steps", spec.n_steps);
    set_if(j, "hardware_faithful", spec.hardware_faithful);
    set_if(j, "workers", spec.workers);
    set_if(j, "noise_floor", spec.noise_floor);
    set_if(j, "phi_points", spec.phi_points);
    if (j.contains("engine")) spec.engine = parse_engine(j.at("engine").get<std::string>());
    if (j.contains("convention")) {
      spec.variant.jump_convention = parse_convention(j.at("convention").get<std::string>());
    }
    if (j.contains("signal_style")) {
      spec.variant.signal_style = parse_signal_style(j.at("signal_style").get<std::string>());
    }
    if (j.contains("dissipation_style")) {
      spec.variant.dissipation_style = parse_dissipation_style(j.at("dissipation_style").get<std::string>());
    }
    if (j.contains("trotter_order")) {
      spec.variant.order = parse_trotter_order(j.at("trotter_order").get<std::string>());
    }
    if (j.contains("initial_states")) {
      spec.initial_states.clear();
      for (const auto& s : j.at("initial_states")) spec.initial_states.push_back(parse_spin_state(s.get<std::string>()));
    }
    if (j.contains("out")) extras.out = j.at("out").get<std::string>();
    if (j.contains("format")) extras.format = j.at("format").get<std::string>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  return extras;
}

}  // namespace qsync
