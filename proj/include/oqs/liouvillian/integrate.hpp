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

#include <string>
#include <vector>

#include "oqs/core/sparse_op.hpp"
#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/models/models.hpp"

namespace oqs {

struct Observable {
  std::string name;
  SparseOp op;  // full-space Hermitian operator
};

struct IntegrateConfig {
  double t_final = 1.0;
  double dt = 1e-3;
  /// Samples are stored at n_samples + 1 equally spaced times in [0, t_final].
  int n_samples = 10;
  bool store_states = true;
  StateTolerance tolerance{1e-10, 1e-8, -1e-8};
};

/// Worst invariant defects seen along a run.
struct InvariantLog {
  double max_trace_defect = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 1.0;
  long checks = 0;

  void merge(const InvariantLog& other);
};

struct EvolutionRecord {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  std::vector<std::string> observable_names;
  /// values[k][o]: observable o at times[k].
  std::vector<std::vector<double>> values;
  std::string method = "rk4";
  double dt = 0.0;
  InvariantLog invariants;
};

/// Fixed-step RK4 on the Lindblad generator. Trace and Hermiticity are checked
/// after every step, positivity at every stored sample. Violations throw
/// InvariantError (usually means dt is too large).
EvolutionRecord integrate(const LindbladModel& model, const DensityMatrix& rho0, const IntegrateConfig& cfg,
                          const std::vector<Observable>& observables = {});

}  // namespace oqs
