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

#include <array>
#include <cstdint>

namespace qsync {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output is a pure function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key);
};

/// Logical draw purposes inside one (trajectory, step). Each gets its own
/// counter space so enabling one source of randomness never shifts another.
enum class StreamChannel : std::uint32_t {
  dissipation_q1 = 0,
  dissipation_q0 = 1,
  gate_noise = 2,
  readout = 3,
  initial_state = 4,
  tomography = 5,
  calibration = 6,
};

/// Sequential uniform draws from the stream keyed by
/// (seed, trajectory, step, channel). Two streams with the same key produce
/// the same sequence no matter which thread or in which order they run.
class CounterStream {
 public:
  CounterStream(std::uint64_t seed, std::uint64_t trajectory, std::uint32_t step,
                StreamChannel channel);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  std::uint64_t next_u64();

 private:
  void refill();

  Philox4x32::Key key_;
  Philox4x32::Counter base_;
  std::uint32_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

}  // namespace qsync
