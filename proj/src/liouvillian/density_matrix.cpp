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

#include "oqs/liouvillian/density_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

namespace oqs {

StateDefects measure_defects(const DenseMatrix& m) {
  StateDefects d;
  d.hermiticity = (m - m.adjoint()).cwiseAbs().maxCoeff();
  d.trace = std::abs(m.trace() - 1.0);
  const DenseMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  return d;
}

DensityMatrix::DensityMatrix(DenseMatrix m, const StateTolerance& tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw DimensionError("DensityMatrix: matrix must be square");
  const auto d = measure_defects(m_);
  if (d.hermiticity > tol.hermiticity || d.trace > tol.trace || d.min_eigenvalue < tol.min_eigenvalue) {
    std::ostringstream os;
    os << "DensityMatrix: invariant violated (hermiticity " << d.hermiticity << ", trace " << d.trace
       << ", min eigenvalue " << d.min_eigenvalue << ")";
    throw InvariantError(os.str());
  }
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double n2 = psi.squaredNorm();
  if (n2 <= 0.0) throw std::invalid_argument("DensityMatrix::pure: zero vector");
  return DensityMatrix(psi * psi.adjoint() / n2);
}

DensityMatrix DensityMatrix::basis_state(Index dim, Index k) {
  if (k < 0 || k >= dim) throw std::out_of_range("DensityMatrix::basis_state: index");
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  return DensityMatrix(DenseMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::product(const std::vector<DensityMatrix>& factors) {
  if (factors.empty()) throw std::invalid_argument("DensityMatrix::product: no factors");
  DenseMatrix m = factors.front().matrix();
  for (std::size_t k = 1; k < factors.size(); ++k) m = kron(m, factors[k].matrix());
  return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

double trace_norm(const DenseMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("trace_norm: matrix must be square");
  const double defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (defect > 1e-10) throw std::invalid_argument("trace_norm: input is not Hermitian");
  const DenseMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(herm, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double trace_distance(const DenseMatrix& a, const DenseMatrix& b) { return 0.5 * trace_norm(a - b); }

DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out = Eigen::kroneckerProduct(a, b);
  return out;
}

DenseMatrix partial_trace(const DenseMatrix& m, const HilbertSpace& space, const std::vector<std::size_t>& keep) {
  if (m.rows() != space.total_dim() || m.cols() != space.total_dim()) throw DimensionError("partial_trace: shape");
  if (!std::is_sorted(keep.begin(), keep.end())) throw std::invalid_argument("partial_trace: keep must be ascending");
  std::vector<std::size_t> keep_dims;
  for (auto s : keep) keep_dims.push_back(static_cast<std::size_t>(space.site_dim(s)));
  Index kept = 1;
  for (auto d : keep_dims) kept *= static_cast<Index>(d);
  std::vector<bool> is_kept(space.n_sites(), false);
  for (auto s : keep) is_kept.at(s) = true;

  const Index n = space.total_dim();
  std::vector<Index> kept_index(static_cast<std::size_t>(n));
  std::vector<Index> traced_index(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    Index k = 0;
    Index t = 0;
    for (std::size_t s = 0; s < space.n_sites(); ++s) {
      const auto digit = static_cast<Index>(space.digit(i, s));
      if (is_kept[s]) k = k * space.site_dim(s) + digit;
      else t = t * space.site_dim(s) + digit;
    }
    kept_index[static_cast<std::size_t>(i)] = k;
    traced_index[static_cast<std::size_t>(i)] = t;
  }
  DenseMatrix out = DenseMatrix::Zero(kept, kept);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (traced_index[static_cast<std::size_t>(i)] != traced_index[static_cast<std::size_t>(j)]) continue;
      out(kept_index[static_cast<std::size_t>(i)], kept_index[static_cast<std::size_t>(j)]) += m(i, j);
    }
  }
  return out;
}

}  // namespace oqs
