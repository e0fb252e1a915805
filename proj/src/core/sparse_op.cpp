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

#include "oqs/core/sparse_op.hpp"

#include <algorithm>
#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace oqs {

SparseOp::SparseOp(Index rows, Index cols) : m_(rows, cols) { m_.makeCompressed(); }

SparseOp::SparseOp(Storage m) : m_(std::move(m)) { canonicalize(); }

void SparseOp::canonicalize() {
  m_.prune([](Index, Index, const cplx& v) { return std::abs(v) > kPruneThreshold; });
  m_.makeCompressed();
}

SparseOp SparseOp::identity(Index n) {
  Storage m(n, n);
  m.setIdentity();
  return SparseOp(std::move(m));
}

SparseOp SparseOp::from_entries(Index rows, Index cols, const std::vector<Entry>& entries) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw DimensionError("SparseOp::from_entries: entry out of range");
    }
    trips.emplace_back(e.row, e.col, e.value);
  }
  Storage m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end());
  return SparseOp(std::move(m));
}

SparseOp SparseOp::from_dense(const DenseMatrix& d) {
  std::vector<Entry> entries;
  for (Index r = 0; r < d.rows(); ++r) {
    for (Index c = 0; c < d.cols(); ++c) {
      if (std::abs(d(r, c)) > kPruneThreshold) entries.push_back({r, c, d(r, c)});
    }
  }
  return from_entries(d.rows(), d.cols(), entries);
}

SparseOp SparseOp::diagonal(const std::vector<cplx>& diag) {
  std::vector<Entry> entries;
  const auto n = static_cast<Index>(diag.size());
  for (Index i = 0; i < n; ++i) entries.push_back({i, i, diag[static_cast<std::size_t>(i)]});
  return from_entries(n, n, entries);
}

std::vector<Entry> SparseOp::entries() const {
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(nnz()));
  for (Index r = 0; r < m_.outerSize(); ++r) {
    for (Storage::InnerIterator it(m_, r); it; ++it) out.push_back({it.row(), it.col(), it.value()});
  }
  return out;
}

SparseOp SparseOp::dagger() const { return SparseOp(Storage(m_.adjoint())); }
SparseOp SparseOp::transpose() const { return SparseOp(Storage(m_.transpose())); }
SparseOp SparseOp::conjugate() const { return SparseOp(Storage(m_.conjugate())); }

double SparseOp::hermiticity_defect() const {
  if (!is_square()) return INFINITY;
  Storage diff = m_ - Storage(m_.adjoint());
  double worst = 0.0;
  for (Index r = 0; r < diff.outerSize(); ++r) {
    for (Storage::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

double SparseOp::max_abs() const {
  double worst = 0.0;
  for (Index k = 0; k < m_.nonZeros(); ++k) worst = std::max(worst, std::abs(m_.valuePtr()[k]));
  return worst;
}

double SparseOp::norm1() const {
  std::vector<double> col(static_cast<std::size_t>(cols()), 0.0);
  for (Index r = 0; r < m_.outerSize(); ++r) {
    for (Storage::InnerIterator it(m_, r); it; ++it) col[static_cast<std::size_t>(it.col())] += std::abs(it.value());
  }
  return col.empty() ? 0.0 : *std::max_element(col.begin(), col.end());
}

SparseOp& SparseOp::operator+=(const SparseOp& other) {
  if (rows() != other.rows() || cols() != other.cols()) throw DimensionError("SparseOp: add shape mismatch");
  m_ += other.m_;
  canonicalize();
  return *this;
}

SparseOp& SparseOp::operator-=(const SparseOp& other) {
  if (rows() != other.rows() || cols() != other.cols()) throw DimensionError("SparseOp: subtract shape mismatch");
  m_ -= other.m_;
  canonicalize();
  return *this;
}

SparseOp& SparseOp::operator*=(cplx s) {
  m_ *= s;
  canonicalize();
  return *this;
}

SparseOp operator*(const SparseOp& a, const SparseOp& b) {
  if (a.cols() != b.rows()) throw DimensionError("SparseOp: matmul shape mismatch");
  return SparseOp(SparseOp::Storage(a.m_ * b.m_));
}

Vector operator*(const SparseOp& a, const Vector& v) {
  if (a.cols() != v.size()) throw DimensionError("SparseOp: matvec shape mismatch");
  return a.m_ * v;
}

DenseMatrix operator*(const SparseOp& a, const DenseMatrix& m) {
  if (a.cols() != m.rows()) throw DimensionError("SparseOp: sparse*dense shape mismatch");
  return a.m_ * m;
}

DenseMatrix operator*(const DenseMatrix& m, const SparseOp& a) {
  if (m.cols() != a.rows()) throw DimensionError("SparseOp: dense*sparse shape mismatch");
  return m * a.m_;
}

bool operator==(const SparseOp& a, const SparseOp& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.nnz() != b.nnz()) return false;
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) {
    if (ea[k].row != eb[k].row || ea[k].col != eb[k].col || ea[k].value != eb[k].value) return false;
  }
  return true;
}

SparseOp add(const SparseOp& a, const SparseOp& b) { return a + b; }
SparseOp scale(const SparseOp& a, cplx s) { return a * s; }
SparseOp matmul(const SparseOp& a, const SparseOp& b) { return a * b; }
SparseOp dagger(const SparseOp& a) { return a.dagger(); }

SparseOp kron(const SparseOp& a, const SparseOp& b) {
  SparseOp::Storage out = Eigen::kroneckerProduct(a.storage(), b.storage());
  return SparseOp(std::move(out));
}

cplx expectation(const SparseOp& op, const DenseMatrix& rho) {
  if (op.rows() != rho.cols() || op.cols() != rho.rows()) throw DimensionError("expectation: shape mismatch");
  cplx acc = 0.0;
  const auto& m = op.storage();
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (SparseOp::Storage::InnerIterator it(m, r); it; ++it) acc += it.value() * rho(it.col(), it.row());
  }
  return acc;
}

cplx expectation(const SparseOp& op, const Vector& psi) {
  if (op.cols() != psi.size() || op.rows() != psi.size()) throw DimensionError("expectation: shape mismatch");
  return psi.dot(op * psi);
}

}  // namespace oqs
