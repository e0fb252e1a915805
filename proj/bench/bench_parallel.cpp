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

// Serial reference vs OpenMP kernels: trajectory ensembles and the mean-field
// stable-count scan. Prints wall times and checks that both paths agree.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "oqs/analysis/observables.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/trajectories/ensemble.hpp"

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t m = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 400;
  std::printf("threads available: %d\n", omp_get_max_threads());

  const auto model = oqs::build_dissipative_ising(oqs::LatticeGraph::chain(6), 1.5, 2.0, 1.0);
  oqs::Vector psi0 = oqs::Vector::Zero(model.dim());
  psi0[model.dim() - 1] = 1.0;
  const std::vector<oqs::Observable> obs{oqs::observable_operator(model, "up_spin_density")};
  oqs::TrajectoryConfig cfg;
  cfg.trajectories = m;
  cfg.dt = 1e-2;
  cfg.t_final = 2.0;
  cfg.master_seed = 7;

  oqs::EnsembleResult serial, parallel;
  const double ts = seconds([&] { serial = oqs::ensemble_average_serial(model, psi0, obs, cfg); });
  const double tp = seconds([&] { parallel = oqs::ensemble_average(model, psi0, obs, cfg); });
  bool same = true;
  for (std::size_t k = 0; k < serial.estimates.size(); ++k) {
    same = same && serial.estimates[k][0].mean == parallel.estimates[k][0].mean &&
           serial.estimates[k][0].std_error == parallel.estimates[k][0].std_error;
  }
  std::printf("ensemble  M=%zu  serial %.3f s  openmp %.3f s  speedup %.2f  identical %s\n", m, ts, tp, ts / tp,
              same ? "yes" : "NO");

  const auto lattice = oqs::LatticeGraph::grid(4, 4, oqs::Boundary::periodic);
  const oqs::ModelFamily family = [&](double h, double) { return oqs::build_dissipative_ising(lattice, h, 5.0, 1.0); };
  std::vector<double> hs;
  for (int k = 0; k <= 10; ++k) hs.push_back(3.0 + 0.5 * k);
  oqs::ScanOptions so;
  so.n_starts = 6;
  std::vector<oqs::ScanPoint> a, b;
  const double ss = seconds([&] { a = oqs::scan_stable_count_serial(family, hs, {0.0}, so); });
  const double sp = seconds([&] { b = oqs::scan_stable_count(family, hs, {0.0}, so); });
  bool scan_same = a.size() == b.size();
  for (std::size_t k = 0; scan_same && k < a.size(); ++k) {
    scan_same = a[k].stable_count == b[k].stable_count && a[k].densities == b[k].densities;
  }
  std::printf("mf scan   points=%zu  serial %.3f s  openmp %.3f s  speedup %.2f  identical %s\n", hs.size(), ss, sp,
              ss / sp, scan_same ? "yes" : "NO");
  return same && scan_same ? 0 : 1;
}
