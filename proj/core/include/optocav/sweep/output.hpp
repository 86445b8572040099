// Copyright 2026 The optocav Authors
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

#include <nlohmann/json_fwd.hpp>
#include <string>

#include "optocav/sweep/sweep.hpp"

namespace optocav::sweep {

/// Process exit status of a sweep run.
enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitAllFailed = 3, kExitPartial = 4 };

struct Provenance {
  std::string version;
  std::string command;
  std::string config_hash;  ///< FNV-1a 64 of the canonical config and command
  std::string timestamp;    ///< UTC, ISO 8601; not part of the hash
};

/// Library version string.
std::string version();

/// Hash of the canonical config JSON (thread count excluded, since it cannot
/// change results) together with the command name.
std::string config_hash(const SweepConfig& config, const std::string& command);

Provenance make_provenance(const SweepConfig& config, const std::string& command);

/// '#'-prefixed provenance block, then columns
///   axis..., S1, S2, g2_1, g2_2, engine, residual, tail, flags
/// Absent values are empty fields; flags are joined with ';'.
std::string format_csv(const SweepResult& result, const Provenance& provenance);

/// Metadata for a run: provenance, config, row counts, per-row errors and the
/// comparison summary when given.
nlohmann::json sidecar_json(const SweepResult& result, const SweepConfig& config,
                            const Provenance& provenance,
                            const CompareReport* compare = nullptr);

/// Writes <prefix>.csv and <prefix>.json, creating parent directories.
void write_outputs(const std::string& prefix, const SweepResult& result,
                   const SweepConfig& config, const Provenance& provenance,
                   const CompareReport* compare = nullptr);

/// kExitOk, kExitAllFailed when every row failed, kExitPartial when some did.
int exit_code(const SweepResult& result);

/// Parses the rows of a CSV produced by format_csv (used by tests and tools).
struct CsvTable {
  std::vector<std::string> header_lines;  ///< provenance lines without '# '
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};
CsvTable parse_csv(const std::string& text);

}  // namespace optocav::sweep
