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

#include "oqs/variational/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oqs {

NelderMeadResult nelder_mead(const Objective& f, const RealVector& x0, const NelderMeadOptions& opts) {
  const Index n = x0.size();
  NelderMeadResult res;
  res.x = x0;
  res.value = f(x0);
  res.evaluations = 1;
  if (n == 0 || res.value <= opts.target) {
    res.converged = true;
    return res;
  }
  auto eval = [&](const RealVector& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<RealVector> pts(n + 1);
  std::vector<double> vals(n + 1);
  for (int round = 0; round <= opts.reinitializations; ++round) {
    const double before = res.value;
    pts[0] = res.x;
    vals[0] = res.value;
    for (Index i = 0; i < n; ++i) {
      pts[i + 1] = res.x;
      pts[i + 1][i] += opts.initial_step;
      vals[i + 1] = eval(pts[i + 1]);
    }
    std::vector<Index> order(n + 1);
    bool done = false;
    while (!done && res.evaluations < opts.max_evals) {
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](Index a, Index b) { return vals[a] < vals[b]; });
      const Index best = order.front(), worst = order.back(), second = order[n - 1];
      if (vals[best] <= opts.target) break;
      double radius = 0.0;
      for (Index i = 0; i <= n; ++i) radius = std::max(radius, (pts[i] - pts[best]).norm());
      if (vals[worst] - vals[best] <= opts.ftol_abs + opts.ftol_rel * std::abs(vals[best]) && radius <= opts.xtol) {
        done = true;
        break;
      }
      ++res.iterations;
      RealVector centroid = RealVector::Zero(n);
      for (Index i = 0; i <= n; ++i) {
        if (i != worst) centroid += pts[i];
      }
      centroid /= static_cast<double>(n);
      const RealVector xr = centroid + (centroid - pts[worst]);
      const double fr = eval(xr);
      if (fr < vals[best]) {
        const RealVector xe = centroid + 2.0 * (centroid - pts[worst]);
        const double fe = eval(xe);
        if (fe < fr) {
          pts[worst] = xe;
          vals[worst] = fe;
        } else {
          pts[worst] = xr;
          vals[worst] = fr;
        }
        continue;
      }
      if (fr < vals[second]) {
        pts[worst] = xr;
        vals[worst] = fr;
        continue;
      }
      const bool outside = fr < vals[worst];
      const RealVector xc = outside ? RealVector(centroid + 0.5 * (xr - centroid))
                                    : RealVector(centroid + 0.5 * (pts[worst] - centroid));
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[worst])) {
        pts[worst] = xc;
        vals[worst] = fc;
        continue;
      }
      for (Index i = 0; i <= n; ++i) {
        if (i == best) continue;
        pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
        vals[i] = eval(pts[i]);
      }
    }
    const Index best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    if (vals[best] < res.value) {
      res.value = vals[best];
      res.x = pts[best];
    }
    res.converged = done || res.value <= opts.target;
    if (res.value <= opts.target || res.evaluations >= opts.max_evals) break;
    if (round > 0 && res.value >= before) break;
  }
  return res;
}

}  // namespace oqs
