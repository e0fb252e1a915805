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

#include "oqs/core/sparse_op.hpp"
#include "oqs/liouvillian/integrate.hpp"
#include "oqs/models/models.hpp"
#include "oqs/trajectories/rng.hpp"

namespace oqs {

enum class Unraveling { jump, qsd };

struct TrajectoryConfig {
  std::size_t trajectories = 1000;
  double dt = 1e-3;
  double t_final = 1.0;
  /// Observables are sampled at n_samples + 1 equally spaced times.
  int n_samples = 10;
  std::uint64_t master_seed = 1;
  /// Relative tolerance on |<psi|psi> - r| / r at a jump.
  double jump_time_tol = 1e-8;
  Unraveling unraveling = Unraveling::jump;
  /// Worker cap for ensembles; 0 keeps the OpenMP default. Never changes results.
  int threads = 0;

  void validate() const;
};

struct JumpEvent {
  double time;
  std::size_t channel;
  /// |<psi|psi> - r| / r at the accepted jump time.
  double norm_defect;
  /// Sum of the normalized channel probabilities (1 up to rounding).
  double probability_sum;
};

struct TrajectoryResult {
  std::vector<double> times;
  /// samples[k][o]: <O_o> in the normalized state at times[k].
  std::vector<std::vector<double>> samples;
  std::vector<JumpEvent> jumps;
  /// qsd only: largest pre-renormalization | |psi|^2 - 1 | over all steps.
  double max_norm_defect = 0.0;
  Vector final_state;
};

/// H - (i/2) sum_j c_j^+ c_j.
SparseOp effective_nh_hamiltonian(const LindbladModel& model);

/// Pure-state propagator shared by all trajectories of a model.
class TrajectorySimulator {
 public:
  explicit TrajectorySimulator(const LindbladModel& model);

  /// Quantum-jump unraveling: RK4 under H_NH until the squared norm falls
  /// below a uniform threshold r, then a log-secant solve for the crossing
  /// time, a jump c_j with probability ~ <c_j^+ c_j>, and a fresh r.
  TrajectoryResult jump(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                        const std::vector<Observable>& observables) const;

  /// Quantum-state-diffusion unraveling, Euler-Maruyama with one real
  /// Wiener increment per channel:
  ///   d psi = [-iH - 1/2 sum_j (c+c - 2<c+>c + |<c>|^2)] psi dt + sum_j (c - <c>) psi dW_j
  /// followed by renormalization.
  TrajectoryResult qsd(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                       const std::vector<Observable>& observables) const;

  TrajectoryResult run(const Vector& psi0, const TrajectoryConfig& cfg, RngStream& rng,
                       const std::vector<Observable>& observables) const;

  Index dim() const { return h_nh_.rows(); }

 private:
  Vector rk4(const Vector& psi, double dt) const;
  Vector apply_nh(const Vector& psi) const;
  double solve_jump_time(const Vector& psi, double max_tau, double r, double tol, double& norm2) const;

  SparseOp hamiltonian_;
  SparseOp h_nh_;
  std::vector<SparseOp> jumps_;
  std::vector<SparseOp> jumps_dag_jumps_;
};

TrajectoryResult jump_trajectory(const LindbladModel& model, const Vector& psi0, const TrajectoryConfig& cfg,
                                 RngStream& rng, const std::vector<Observable>& observables = {});
TrajectoryResult qsd_trajectory(const LindbladModel& model, const Vector& psi0, const TrajectoryConfig& cfg,
                                RngStream& rng, const std::vector<Observable>& observables = {});

}  // namespace oqs
