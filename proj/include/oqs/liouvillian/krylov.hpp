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

#include <cstdint>
#include <functional>
#include <vector>

#include "oqs/core/types.hpp"

namespace oqs {

/// out = A * in.
using LinearOperator = std::function<void(const Vector& in, Vector& out)>;

struct KrylovOptions {
  int krylov_dim = 30;
  int max_restarts = 200;
  /// Relative residual |A x - theta x| / |theta| for acceptance.
  double tol = 1e-13;
  std::uint64_t seed = 0x5eed;
};

struct RitzPair {
  cplx value;
  Vector vector;  // unit 2-norm
  double residual = 0.0;
};

struct KrylovResult {
  std::vector<RitzPair> pairs;  // sorted by |value| descending
  int iterations = 0;
  bool converged = false;
  /// All Ritz values of the final projected matrix.
  std::vector<cplx> ritz_values;
};

/// Largest-magnitude eigenpair of a general operator via explicitly restarted
/// Arnoldi. Vectors in `deflate` (orthonormal) are projected out, so repeated
/// calls peel off further Schur vectors.
KrylovResult arnoldi_largest(const LinearOperator& op, Index n, const KrylovOptions& opts,
                             const std::vector<Vector>& deflate = {});

/// Largest eigenpair of a Hermitian operator via restarted Lanczos with full
/// reorthogonalization.
KrylovResult lanczos_largest(const LinearOperator& op, Index n, const KrylovOptions& opts,
                             const std::vector<Vector>& deflate = {});

}  // namespace oqs
