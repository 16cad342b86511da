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

#include <iosfwd>
#include <string>

#include "qsync/experiments.hpp"

namespace qsync {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);

/// `# key: value` comment block, header row, one line per row, values at 17
/// significant digits.
void write_csv(std::ostream& out, const ResultTable& table);
ResultTable read_csv(std::istream& in);

/// {"provenance": {...}, "columns": [...], "rows": [[...], ...]}; key order
/// of the provenance block is preserved.
void write_json(std::ostream& out, const ResultTable& table);
ResultTable read_json(std::istream& in);

/// Throws std::runtime_error on I/O failure.
void write_results(const ResultTable& table, const std::string& path, OutputFormat format);
ResultTable read_results(const std::string& path, OutputFormat format);

}  // namespace qsync
