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

#include "oqs/analysis/fss.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace oqs {

namespace {

bool same_lambda(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

void ScalingDataset::validate() const {
  for (const auto& r : records) {
    if (!(r.n_sites >= 1.0)) throw std::invalid_argument("ScalingDataset: N must be >= 1");
    if (!(r.lambda > 0.0)) throw std::invalid_argument("ScalingDataset: lambda must be positive");
    if (!std::isfinite(r.chi)) throw std::invalid_argument("ScalingDataset: chi must be finite");
  }
}

CollapseResult fss_collapse(const ScalingDataset& data, double alpha) {
  data.validate();
  CollapseResult out;
  out.alpha = alpha;
  for (const auto& r : data.records) out.curves[r.n_sites].push_back({r.lambda, r.chi / std::pow(r.n_sites, alpha)});
  if (out.curves.size() < 2) throw std::invalid_argument("fss_collapse: need at least two distinct system sizes");
  for (auto& [n, c] : out.curves) std::sort(c.begin(), c.end());

  std::vector<double> lambdas;
  for (const auto& r : data.records) {
    if (std::none_of(lambdas.begin(), lambdas.end(), [&](double l) { return same_lambda(l, r.lambda); })) {
      lambdas.push_back(r.lambda);
    }
  }
  double sum_sq = 0.0;
  std::size_t points = 0;
  for (double lam : lambdas) {
    std::vector<double> values;
    for (const auto& [n, c] : out.curves) {
      for (const auto& [l, v] : c) {
        if (same_lambda(l, lam)) {
          values.push_back(v);
          break;
        }
      }
    }
    if (values.size() < 2) continue;
    ++out.shared_lambdas;
    for (std::size_t a = 0; a < values.size(); ++a) {
      sum_sq += values[a] * values[a];
      ++points;
      for (std::size_t b = a + 1; b < values.size(); ++b) out.cost += (values[a] - values[b]) * (values[a] - values[b]);
    }
  }
  if (out.shared_lambdas == 0) throw std::invalid_argument("fss_collapse: no lambda shared by two system sizes");
  const double mean_sq = sum_sq / static_cast<double>(points);
  out.normalized_cost = mean_sq > 0.0 ? out.cost / mean_sq : 0.0;
  return out;
}

FitResult fss_fit(const ScalingDataset& data, double alpha_min, double alpha_max, int grid) {
  if (!(alpha_max > alpha_min) || grid < 3) throw std::invalid_argument("fss_fit: bad alpha range");
  FitResult out;
  auto cost = [&](double a) { return fss_collapse(data, a).normalized_cost; };
  std::size_t best = 0;
  for (int k = 0; k < grid; ++k) {
    const double a = alpha_min + (alpha_max - alpha_min) * k / (grid - 1);
    out.scanned_alpha.push_back(a);
    out.scanned_cost.push_back(cost(a));
    if (out.scanned_cost.back() < out.scanned_cost[best]) best = static_cast<std::size_t>(k);
  }
  double lo = out.scanned_alpha[best == 0 ? 0 : best - 1];
  double hi = out.scanned_alpha[std::min<std::size_t>(best + 1, out.scanned_alpha.size() - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = cost(x1), f2 = cost(x2);
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = cost(x2);
    }
  }
  out.alpha = 0.5 * (lo + hi);
  if (out.scanned_cost[best] < cost(out.alpha)) out.alpha = out.scanned_alpha[best];
  out.collapse = fss_collapse(data, out.alpha);
  return out;
}

}  // namespace oqs
