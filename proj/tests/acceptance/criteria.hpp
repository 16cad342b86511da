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

#include <string>
#include <vector>

namespace qsync::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double limit_seconds = 0.0;  ///< 0: no runtime bound
};

inline constexpr int kCriterionCount = 12;

/// Runs one criterion; exceptions are reported as failures.
CriterionResult run_criterion(int id, int workers = 0);

/// "criterion N [PASS|FAIL] name: detail (t s)"
std::string format_line(const CriterionResult& r);

/// Runs the given criteria (all when empty), printing one line each to
/// stdout. Returns the number of failures.
int run_and_report(const std::vector<int>& ids, int workers = 0);

}  // namespace qsync::acceptance
