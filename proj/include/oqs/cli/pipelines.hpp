// Copyright 2026 The oqs-toolkit Authors
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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "oqs/analysis/csv.hpp"
#include "oqs/cli/config.hpp"

namespace oqs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNonConvergence = 3;

std::vector<std::string> command_names();

struct PipelineOutput {
  CsvTable table;
  /// JSON mirror of the table plus run metadata.
  std::string json;
};

/// Runs one subcommand on a parsed config. Throws ConfigError for unusable
/// configs and ConvergenceError when a solver does not converge.
PipelineOutput run_pipeline(const std::string& command, const RunConfig& cfg);

struct RunOptions {
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  /// Override the config's output paths; empty keeps them.
  std::string csv_out;
  std::string json_out;
};

/// Loads, overrides and runs. CSV goes to the configured path or `out`;
/// diagnostics go to `err`. Returns the process exit code.
int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace oqs::cli
