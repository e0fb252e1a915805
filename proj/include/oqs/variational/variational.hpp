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
#include <functional>
#include <optional>
#include <vector>

#include "oqs/meanfield/meanfield.hpp"
#include "oqs/models/models.hpp"
#include "oqs/variational/ansatz.hpp"
#include "oqs/variational/nelder_mead.hpp"

namespace oqs {

/// Two-site reduced generator applied to a product state: bonds on (i, j)
/// act exactly, bonds from i or j to other sites enter through the other
/// sites' expectations, local terms and jumps act locally. Site i is the
/// left tensor factor.
DenseMatrix rhs_two_site(const LindbladModel& model, const ProductState& state, std::size_t i, std::size_t j);

/// Sum over lattice edges of trace_norm(rhs_two_site); a site without edges
/// contributes trace_norm of its single-site rhs.
double bound_D(const LindbladModel& model, const ProductState& state);

struct VariationalOptions {
  int n_restarts = 8;
  std::uint64_t seed = 1;
  NelderMeadOptions nm{};
};

struct VariationalResult {
  VariationalAnsatz ansatz;
  ProductState state;
  double D_value = 0.0;
  double initial_D = 0.0;
  int iterations = 0;
  int evaluations = 0;
  int restarts_used = 0;
  /// Index of the winning run: 0 is the supplied init, r > 0 is restart r.
  int best_run = 0;
  bool converged = false;
  /// No run improved on the initial value.
  bool stagnated = false;
};

/// Nelder-Mead from `init`, plus n_restarts runs from random parameters
/// drawn from RngStream(seed, r); the lowest D wins.
VariationalResult minimize_D(const LindbladModel& model, const VariationalAnsatz& init,
                             const VariationalOptions& opts = {});

enum class StepScheme { euler, implicit_midpoint };

struct StepResult {
  VariationalAnsatz ansatz;
  ProductState state;
  /// Pair-sum residual at the optimum.
  double residual = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// One step of the time-dependent principle: minimizes over rho' the pair
/// sum of trace_norm(rho'_i rho'_j - rho_i rho_j - tau rhs_ij[sigma]), with
/// sigma = rho (Euler) or the factorwise midpoint (rho + rho') / 2.
StepResult variational_step(const LindbladModel& model, const ProductState& state, double tau, StepScheme scheme,
                            bool translation_invariant = true, const NelderMeadOptions& nm = {});

using ModelFamily1D = std::function<LindbladModel(double)>;

struct SweepPoint {
  double parameter = 0.0;
  double n_r = 0.0;
  double D_value = 0.0;
  int restarts_used = 0;
  VariationalAnsatz ansatz;
};

struct SweepOptions {
  VariationalOptions var{};
  bool translation_invariant = true;
  /// |n_r(k+1) - n_r(k)| above this counts as a discontinuity.
  double jump_threshold = 0.1;
  int threads = 0;
};

/// Independent minimize_D at every parameter (parallel over points), each
/// started from the maximally mixed state and the local basis product states.
/// Afterwards every point is re-minimized from its neighbours' optima until no
/// point lowers its D; the result does not depend on the thread count.
std::vector<SweepPoint> variational_sweep(const ModelFamily1D& family, const std::vector<double>& params,
                                          const SweepOptions& opts = {});
std::vector<SweepPoint> variational_sweep_serial(const ModelFamily1D& family, const std::vector<double>& params,
                                                 const SweepOptions& opts = {});

/// Midpoints (p_k + p_{k+1}) / 2 of every step with |Delta n_r| > threshold.
std::vector<double> find_jumps(const std::vector<SweepPoint>& branch, double threshold);

struct HysteresisResult {
  std::vector<SweepPoint> up;
  /// Ordered as the down-sweep visited them, i.e. decreasing parameter.
  std::vector<SweepPoint> down;
  std::vector<double> up_jumps;
  std::vector<double> down_jumps;
  /// Both sweeps show one jump, at the same grid interval.
  bool coincident = false;
};

/// Up-sweep then down-sweep over the ordered parameters, warm-starting each
/// point from the previous optimum in addition to the random restarts.
HysteresisResult hysteresis_scan(const ModelFamily1D& family, const std::vector<double>& params,
                                 const SweepOptions& opts = {});

}  // namespace oqs
