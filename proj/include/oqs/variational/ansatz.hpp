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
#include <vector>

#include "oqs/core/types.hpp"
#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/models/models.hpp"
#include "oqs/trajectories/rng.hpp"

namespace oqs {

/// Real parameters per factor: 3 for a qubit (Bloch vector n = tanh|m| m/|m|),
/// d^2 otherwise (lower-triangular G, rho = G G^+ / tr G G^+).
std::size_t factor_parameter_count(Index d);
DensityMatrix decode_factor(Index d, const double* p);
/// Parameters reproducing rho (up to the clamp |n| <= 1 - 1e-12 for qubits).
void encode_factor(const DensityMatrix& rho, double* p);

/// Product-state variational manifold. In translation-invariant mode one
/// factor is shared by every site.
struct VariationalAnsatz {
  std::vector<Index> site_dims;
  bool translation_invariant = true;
  RealVector params;

  std::size_t n_factors() const { return translation_invariant ? 1 : site_dims.size(); }
  std::size_t parameter_count() const;
  ProductState decode() const;

  static VariationalAnsatz from_state(const ProductState& state, bool translation_invariant);
  static VariationalAnsatz random(const LindbladModel& model, bool translation_invariant, RngStream& rng);
};

}  // namespace oqs
