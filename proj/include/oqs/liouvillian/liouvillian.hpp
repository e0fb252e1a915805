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

#include <vector>

#include "oqs/core/sparse_op.hpp"
#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/models/models.hpp"

namespace oqs {

/// Applies the Lindblad generator
///   L[rho] = -i[H, rho] + sum_mu (L rho L^+ - 1/2 {L^+ L, rho})
/// written as -i(K rho - rho K^+) + sum_mu L rho L^+ with K = H - (i/2) sum L^+ L.
class LindbladGenerator {
 public:
  explicit LindbladGenerator(const LindbladModel& model);
  LindbladGenerator(const SparseOp& hamiltonian, const std::vector<SparseOp>& jumps);

  Index dim() const { return k_.rows(); }
  DenseMatrix apply(const DenseMatrix& rho) const;
  DenseMatrix operator()(const DenseMatrix& rho) const { return apply(rho); }
  /// Upper bound on the generator's spectral radius, used to pick stable RK4 steps.
  double rate_bound() const { return rate_bound_; }

 private:
  SparseOp k_;
  SparseOp k_dag_;
  std::vector<SparseOp> jumps_;
  std::vector<SparseOp> jumps_dag_;
  double rate_bound_ = 0.0;
};

DenseMatrix lindblad_rhs(const LindbladModel& model, const DenseMatrix& rho);
inline DenseMatrix lindblad_rhs(const LindbladModel& model, const DensityMatrix& rho) {
  return lindblad_rhs(model, rho.matrix());
}

/// Column stacking: vec(rho)[i + d*j] = rho(i, j), so vec(A X B) = (B^T (x) A) vec(X).
enum class VecConvention { column_stacking };

struct Superoperator {
  SparseOp matrix;
  Index dim = 0;  // Hilbert-space dimension d; matrix is d^2 x d^2
  VecConvention convention = VecConvention::column_stacking;
};

Superoperator build_superoperator(const LindbladModel& model);
Superoperator build_superoperator(const SparseOp& hamiltonian, const std::vector<SparseOp>& jumps);

Vector vectorize(const DenseMatrix& m);
DenseMatrix devectorize(const Vector& v);

}  // namespace oqs
