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

#include "oqs/trajectories/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace oqs {

namespace {

struct Slot {
  std::optional<TrajectoryResult> result;
  std::string error;
};

Slot run_one(const TrajectorySimulator& sim, const Vector& psi0, const std::vector<Observable>& observables,
             const TrajectoryConfig& cfg, std::size_t index) {
  Slot slot;
  try {
    RngStream rng(cfg.master_seed, index);
    slot.result = sim.run(psi0, cfg, rng, observables);
  } catch (const std::exception& e) {
    slot.error = e.what();
  }
  return slot;
}

void check_inputs(const TrajectoryConfig& cfg) {
  cfg.validate();
  if (cfg.trajectories < 2) throw std::invalid_argument("ensemble_average: need M >= 2 for a standard error");
}

EnsembleResult reduce(const std::vector<Slot>& slots, const std::vector<Observable>& observables,
                      const TrajectoryConfig& cfg) {
  EnsembleResult out;
  out.master_seed = cfg.master_seed;
  out.requested = slots.size();
  for (const auto& o : observables) out.observable_names.push_back(o.name);

  std::vector<const TrajectoryResult*> ok;
  for (std::size_t m = 0; m < slots.size(); ++m) {
    if (slots[m].result) {
      ok.push_back(&*slots[m].result);
    } else {
      ++out.failed;
      out.failure_messages.push_back("trajectory " + std::to_string(m) + ": " + slots[m].error);
    }
  }
  if (out.failed * 100 > slots.size()) {
    throw std::runtime_error("ensemble_average: " + std::to_string(out.failed) + " of " +
                             std::to_string(slots.size()) + " trajectories aborted; first: " +
                             out.failure_messages.front());
  }
  if (ok.size() < 2) throw std::runtime_error("ensemble_average: fewer than two successful trajectories");

  const std::size_t n = ok.size();
  out.times = ok.front()->times;
  out.estimates.assign(out.times.size(), std::vector<EnsembleEstimate>(observables.size()));
  for (std::size_t k = 0; k < out.times.size(); ++k) {
    for (std::size_t o = 0; o < observables.size(); ++o) {
      double sum = 0.0;
      for (const auto* r : ok) sum += r->samples[k][o];
      const double mean = sum / static_cast<double>(n);
      double ss = 0.0;
      for (const auto* r : ok) {
        const double d = r->samples[k][o] - mean;
        ss += d * d;
      }
      const double sd = std::sqrt(ss / static_cast<double>(n - 1));
      out.estimates[k][o] = {observables[o].name, out.times[k], mean, sd / std::sqrt(static_cast<double>(n)), n};
    }
  }
  out.first_jump_times.reserve(n);
  for (const auto* r : ok) {
    out.first_jump_times.push_back(r->jumps.empty() ? -1.0 : r->jumps.front().time);
    out.total_jumps += r->jumps.size();
    for (const auto& j : r->jumps) {
      out.max_jump_norm_defect = std::max(out.max_jump_norm_defect, j.norm_defect);
      out.max_probability_sum_defect = std::max(out.max_probability_sum_defect, std::abs(j.probability_sum - 1.0));
    }
    out.max_qsd_norm_defect = std::max(out.max_qsd_norm_defect, r->max_norm_defect);
  }
  return out;
}

}  // namespace

EnsembleResult ensemble_average(const LindbladModel& model, const Vector& psi0,
                                const std::vector<Observable>& observables, const TrajectoryConfig& cfg) {
  check_inputs(cfg);
  const TrajectorySimulator sim(model);
  const long m_total = static_cast<long>(cfg.trajectories);
  std::vector<Slot> slots(cfg.trajectories);
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long m = 0; m < m_total; ++m) {
    slots[m] = run_one(sim, psi0, observables, cfg, static_cast<std::size_t>(m));
  }
  return reduce(slots, observables, cfg);
}

EnsembleResult ensemble_average_serial(const LindbladModel& model, const Vector& psi0,
                                       const std::vector<Observable>& observables, const TrajectoryConfig& cfg) {
  check_inputs(cfg);
  const TrajectorySimulator sim(model);
  std::vector<Slot> slots;
  slots.reserve(cfg.trajectories);
  for (std::size_t m = 0; m < cfg.trajectories; ++m) slots.push_back(run_one(sim, psi0, observables, cfg, m));
  return reduce(slots, observables, cfg);
}

}  // namespace oqs
