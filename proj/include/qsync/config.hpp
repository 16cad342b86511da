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

#include <optional>
#include <string>

#include "qsync/experiments.hpp"

namespace qsync {

/// Settings in a config file that are not part of ExperimentSpec.
struct ConfigExtras {
  std::optional<std::string> out;
  std::optional<std::string> format;
};

/// Config files are JSON objects mirroring ExperimentSpec:
///   preset, params {delta, epsilon, gamma_10, gamma_m10, dt, j_01, j_0m1,
///   j_m11}, grid {name, values}, trajectories, seed, noise {enabled, p_cnot,
///   p_1q, p_read0, p_read1, p_damping}, engine, convention, signal_style,
///   dissipation_style, trotter_order, steps, hardware_faithful,
///   initial_states, workers, noise_floor, phi_points, out, format.
/// Complex coefficients are {"re": .., "im": ..} or {"abs": .., "arg": ..}.
/// Unknown keys are rejected.
std::string read_config_text(const std::string& path);

/// Preset named in the config, if any.
std::optional<Preset> config_preset(const std::string& json_text);

/// Overwrites the fields present in the config; throws std::invalid_argument.
ConfigExtras apply_config(const std::string& json_text, ExperimentSpec& spec);

}  // namespace qsync
