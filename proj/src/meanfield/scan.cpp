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

#include <omp.h>

#include <stdexcept>
#include <string>

#include "oqs/meanfield/meanfield.hpp"

namespace oqs {

namespace {

ScanPoint scan_point(const ModelFamily& family, double p1, double p2, std::size_t index, const ScanOptions& opts) {
  ScanPoint pt;
  pt.p1 = p1;
  pt.p2 = p2;
  try {
    const LindbladModel model = family(p1, p2);
    RngStream rng(opts.seed, index);
    const auto ms = mf_multistart(model, opts.n_starts, rng, opts.mf);
    for (const auto& s : ms.solutions) {
      pt.densities.push_back(mean_density(s.state));
      pt.stable.push_back(s.stable);
      if (s.stable) ++pt.stable_count;
    }
    pt.solution_count = static_cast<int>(ms.solutions.size());
    if (ms.solutions.empty()) {
      pt.stable_count = -1;
      pt.error = "no start converged in " + std::to_string(ms.starts) + " attempts (possible limit cycle)";
    }
  } catch (const std::exception& e) {
    pt.stable_count = -1;
    pt.solution_count = 0;
    pt.densities.clear();
    pt.stable.clear();
    pt.error = e.what();
  }
  return pt;
}

void check_grid(const std::vector<double>& p1, const std::vector<double>& p2) {
  if (p1.empty() || p2.empty()) throw std::invalid_argument("scan_stable_count: empty parameter grid");
}

}  // namespace

std::vector<ScanPoint> scan_stable_count(const ModelFamily& family, const std::vector<double>& p1,
                                         const std::vector<double>& p2, const ScanOptions& opts) {
  check_grid(p1, p2);
  const long total = static_cast<long>(p1.size() * p2.size());
  std::vector<ScanPoint> out(static_cast<std::size_t>(total));
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long i = 0; i < total; ++i) {
    const std::size_t idx = static_cast<std::size_t>(i);
    out[idx] = scan_point(family, p1[idx / p2.size()], p2[idx % p2.size()], idx, opts);
  }
  return out;
}

std::vector<ScanPoint> scan_stable_count_serial(const ModelFamily& family, const std::vector<double>& p1,
                                                const std::vector<double>& p2, const ScanOptions& opts) {
  check_grid(p1, p2);
  std::vector<ScanPoint> out;
  for (std::size_t i = 0; i < p1.size() * p2.size(); ++i) {
    out.push_back(scan_point(family, p1[i / p2.size()], p2[i % p2.size()], i, opts));
  }
  return out;
}

}  // namespace oqs
