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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "oqs/trajectories/trajectories.hpp"

namespace oqs {

struct EnsembleEstimate {
  std::string observable;
  double time = 0.0;
  double mean = 0.0;
  /// Sample standard deviation over sqrt(M).
  double std_error = 0.0;
  std::size_t count = 0;
};

struct EnsembleResult {
  std::uint64_t master_seed = 0;
  std::vector<double> times;
  std::vector<std::string> observable_names;
  /// estimates[k][o] at times[k].
  std::vector<std::vector<EnsembleEstimate>> estimates;
  /// Time of the first jump per successful trajectory, or negative if none occurred.
  std::vector<double> first_jump_times;
  std::size_t requested = 0;
  std::size_t failed = 0;
  std::vector<std::string> failure_messages;
  std::size_t total_jumps = 0;
  double max_jump_norm_defect = 0.0;
  double max_probability_sum_defect = 0.0;
  double max_qsd_norm_defect = 0.0;
};

/// Runs cfg.trajectories independent trajectories, trajectory m drawing from
/// RngStream(cfg.master_seed, m), with OpenMP over trajectories. Results are
/// reduced in index order, so they do not depend on the worker count.
/// Throws std::runtime_error if more than 1% of trajectories abort.
EnsembleResult ensemble_average(const LindbladModel& model, const Vector& psi0,
                                const std::vector<Observable>& observables, const TrajectoryConfig& cfg);

/// Single-threaded reference for ensemble_average; identical output.
EnsembleResult ensemble_average_serial(const LindbladModel& model, const Vector& psi0,
                                       const std::vector<Observable>& observables, const TrajectoryConfig& cfg);

}  // namespace oqs
