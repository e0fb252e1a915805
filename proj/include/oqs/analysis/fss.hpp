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

#include <map>
#include <utility>
#include <vector>

namespace oqs {

struct ScalingRecord {
  double n_sites;
  double lambda;
  double chi;
};

struct ScalingDataset {
  std::vector<ScalingRecord> records;
  /// Throws std::invalid_argument unless N >= 1 and lambda > 0 everywhere.
  void validate() const;
};

struct CollapseResult {
  double alpha = 0.0;
  /// Sum over shared lambda and over pairs of sizes of (chi~_N - chi~_N')^2.
  double cost = 0.0;
  /// cost divided by the mean chi~^2 over the compared points.
  double normalized_cost = 0.0;
  /// chi~ = chi / N^alpha, keyed by N, as (lambda, chi~) sorted by lambda.
  std::map<double, std::vector<std::pair<double, double>>> curves;
  std::size_t shared_lambdas = 0;
};

/// Needs at least two distinct N and at least one lambda shared by two of them.
CollapseResult fss_collapse(const ScalingDataset& data, double alpha);

struct FitResult {
  double alpha = 0.0;
  CollapseResult collapse;
  std::vector<double> scanned_alpha;
  std::vector<double> scanned_cost;
};

/// Grid scan of the normalized collapse cost over [alpha_min, alpha_max],
/// refined by golden-section search around the best grid point.
FitResult fss_fit(const ScalingDataset& data, double alpha_min = -3.0, double alpha_max = 3.0, int grid = 601);

}  // namespace oqs
