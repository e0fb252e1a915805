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

#include "oqs/liouvillian/liouvillian.hpp"

#include <cmath>

namespace oqs {

LindbladGenerator::LindbladGenerator(const LindbladModel& model)
    : LindbladGenerator(model.hamiltonian(), model.jumps()) {}

LindbladGenerator::LindbladGenerator(const SparseOp& hamiltonian, const std::vector<SparseOp>& jumps)
    : k_(hamiltonian), jumps_(jumps) {
  const Index d = hamiltonian.rows();
  SparseOp decay(d, d);
  double jump_norm = 0.0;
  for (const auto& j : jumps_) {
    if (j.rows() != d || j.cols() != d) throw DimensionError("LindbladGenerator: jump operator dimension");
    jumps_dag_.push_back(j.dagger());
    decay += jumps_dag_.back() * j;
    jump_norm += j.norm1() * jumps_dag_.back().norm1();
  }
  k_ -= decay * cplx(0.0, 0.5);
  k_dag_ = k_.dagger();
  rate_bound_ = 2.0 * hamiltonian.norm1() + 2.0 * jump_norm;
}

DenseMatrix LindbladGenerator::apply(const DenseMatrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw DimensionError("lindblad_rhs: state dimension mismatch");
  DenseMatrix out = (k_ * rho - rho * k_dag_) * cplx(0.0, -1.0);
  for (std::size_t m = 0; m < jumps_.size(); ++m) {
    if (jumps_[m].nnz() == 0) continue;
    out.noalias() += (jumps_[m] * rho) * jumps_dag_[m];
  }
  return out;
}

DenseMatrix lindblad_rhs(const LindbladModel& model, const DenseMatrix& rho) {
  return LindbladGenerator(model).apply(rho);
}

Superoperator build_superoperator(const LindbladModel& model) {
  return build_superoperator(model.hamiltonian(), model.jumps());
}

Superoperator build_superoperator(const SparseOp& hamiltonian, const std::vector<SparseOp>& jumps) {
  const Index d = hamiltonian.rows();
  const SparseOp id = SparseOp::identity(d);
  // vec(H rho) = (I (x) H) vec(rho); vec(rho H) = (H^T (x) I) vec(rho).
  SparseOp l = (kron(id, hamiltonian) - kron(hamiltonian.transpose(), id)) * cplx(0.0, -1.0);
  for (const auto& j : jumps) {
    if (j.nnz() == 0) continue;
    const SparseOp jdj = j.dagger() * j;
    l += kron(j.conjugate(), j);
    l -= kron(id, jdj) * cplx(0.5);
    l -= kron(jdj.transpose(), id) * cplx(0.5);
  }
  return Superoperator{std::move(l), d, VecConvention::column_stacking};
}

Vector vectorize(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("vectorize: matrix must be square");
  return Eigen::Map<const Vector>(m.data(), m.size());
}

DenseMatrix devectorize(const Vector& v) {
  const auto d = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
  if (d * d != v.size()) throw DimensionError("devectorize: length is not a perfect square");
  return Eigen::Map<const DenseMatrix>(v.data(), d, d);
}

}  // namespace oqs
