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

#include <functional>

#include "oqs/core/types.hpp"

namespace oqs {

struct NelderMeadOptions {
  int max_evals = 20000;
  /// Edge length of the initial simplex.
  double initial_step = 0.5;
  /// Stop when f_max - f_min <= ftol_abs + ftol_rel * |f_min| and the simplex
  /// fits in a ball of radius xtol.
  double ftol_abs = 1e-15;
  double ftol_rel = 1e-12;
  double xtol = 1e-10;
  /// Stop as soon as a value at or below this is seen.
  double target = -1.0;
  /// Rebuild the simplex around the best point this many times after convergence.
  int reinitializations = 2;
};

struct NelderMeadResult {
  RealVector x;
  double value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(const RealVector&)>;

/// Derivative-free downhill simplex minimization.
NelderMeadResult nelder_mead(const Objective& f, const RealVector& x0, const NelderMeadOptions& opts = {});

}  // namespace oqs
