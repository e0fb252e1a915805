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

#include "oqs/core/hilbert_space.hpp"
#include "oqs/core/types.hpp"

namespace oqs {

struct StateTolerance {
  double hermiticity = 1e-10;
  double trace = 1e-10;
  double min_eigenvalue = -1e-8;
};

struct StateDefects {
  double hermiticity = 0.0;
  double trace = 0.0;
  double min_eigenvalue = 0.0;
};

StateDefects measure_defects(const DenseMatrix& m);

/// Hermitian, unit-trace, positive semidefinite matrix. Construction checks
/// the invariants and throws InvariantError when they fail.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(DenseMatrix m, const StateTolerance& tol = {});

  static DensityMatrix pure(const Vector& psi);
  static DensityMatrix basis_state(Index dim, Index k);
  static DensityMatrix maximally_mixed(Index dim);
  /// Kronecker product of local factors, site 0 leftmost.
  static DensityMatrix product(const std::vector<DensityMatrix>& factors);

  Index dim() const { return m_.rows(); }
  const DenseMatrix& matrix() const { return m_; }
  double purity() const;

 private:
  DenseMatrix m_;
};

/// Sum of |eigenvalues| of a Hermitian matrix. Rejects inputs whose
/// Hermiticity defect exceeds 1e-10.
double trace_norm(const DenseMatrix& hermitian);
double trace_distance(const DenseMatrix& a, const DenseMatrix& b);

/// Reduced matrix on `keep` (ascending site order), tracing out the rest.
DenseMatrix partial_trace(const DenseMatrix& m, const HilbertSpace& space, const std::vector<std::size_t>& keep);

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace oqs
