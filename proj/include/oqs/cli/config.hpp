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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "oqs/analysis/fss.hpp"
#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/models/models.hpp"

namespace oqs::cli {

/// Invalid or unreadable configuration; the CLI maps it to exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kSchemaVersion = 1;

struct LatticeSpec {
  std::string kind = "chain";  // chain | grid
  std::size_t lx = 1;
  std::size_t ly = 1;
  std::string boundary = "open";  // open | periodic
  friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

struct ModelSpec {
  std::string name;
  std::map<std::string, double> params;
  LatticeSpec lattice;
  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

struct SolverSpec {
  std::string method;
  double tol = 1e-10;
  double dt = 1e-3;
  double t_final = 1.0;
  int n_samples = 10;
  std::size_t trajectories = 1000;
  std::uint64_t seed = 1;
  std::string unraveling = "jump";
  double jump_time_tol = 1e-8;
  int n_starts = 12;
  int n_restarts = 8;
  int max_iter = 20000;
  std::vector<std::size_t> cluster{1, 1};
  double jump_threshold = 0.1;
  bool translation_invariant = true;
  int threads = 0;
  friend bool operator==(const SolverSpec&, const SolverSpec&) = default;
};

struct InitialStateSpec {
  /// all_down | all_up | vacuum | basis | maximally_mixed
  std::string kind = "all_down";
  std::int64_t index = 0;
  friend bool operator==(const InitialStateSpec&, const InitialStateSpec&) = default;
};

struct SweepAxis {
  std::string name;
  std::vector<double> values;
  friend bool operator==(const SweepAxis&, const SweepAxis&) = default;
};

struct ScanSpec {
  SweepAxis param1;
  std::optional<SweepAxis> param2;
  friend bool operator==(const ScanSpec&, const ScanSpec&) = default;
};

struct FssSpec {
  /// Explicit (N, lambda, chi) records ...
  std::vector<std::array<double, 3>> records;
  /// ... or lattices [lx, ly] whose steady-state susceptibility is computed.
  std::vector<std::array<std::size_t, 2>> lattices;
  double alpha_min = -3.0;
  double alpha_max = 3.0;
  int grid = 601;
  friend bool operator==(const FssSpec&, const FssSpec&) = default;
};

struct OutputSpec {
  std::string csv;
  std::string json;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct RunConfig {
  int schema_version = kSchemaVersion;
  ModelSpec model;
  SolverSpec solver;
  InitialStateSpec initial_state;
  std::vector<std::string> observables;
  std::optional<ScanSpec> scan;
  std::optional<FssSpec> fss;
  OutputSpec output;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Strict parse: unknown keys, wrong types and unsupported schema versions throw ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

/// Applies "dotted.path=value" overrides to raw JSON text before parsing.
/// The value is read as JSON when it parses, as a string otherwise.
std::string apply_overrides(const std::string& json_text, const std::vector<std::string>& assignments);

LatticeGraph build_lattice(const LatticeSpec& spec);
/// Builds the named model; unknown models or parameters throw ConfigError.
LindbladModel build_model(const ModelSpec& spec);
DensityMatrix build_initial_state(const LindbladModel& model, const InitialStateSpec& spec);
/// Pure initial state for trajectories; mixed kinds throw ConfigError.
Vector build_initial_vector(const LindbladModel& model, const InitialStateSpec& spec);

}  // namespace oqs::cli
