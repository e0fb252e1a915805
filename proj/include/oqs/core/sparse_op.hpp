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

#include <Eigen/SparseCore>

#include "oqs/core/types.hpp"

namespace oqs {

/// Entries with magnitude at or below this are dropped after every operation.
inline constexpr double kPruneThreshold = 1e-15;

struct Entry {
  Index row;
  Index col;
  cplx value;
};

/// Sparse complex operator in canonical form: row-major, compressed, and
/// free of entries with |value| <= kPruneThreshold.
class SparseOp {
 public:
  using Storage = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

  SparseOp() = default;
  SparseOp(Index rows, Index cols);
  explicit SparseOp(Storage m);

  static SparseOp identity(Index n);
  static SparseOp zero(Index rows, Index cols) { return SparseOp(rows, cols); }
  static SparseOp from_entries(Index rows, Index cols, const std::vector<Entry>& entries);
  static SparseOp from_dense(const DenseMatrix& m);
  static SparseOp diagonal(const std::vector<cplx>& diag);

  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }
  Index nnz() const { return m_.nonZeros(); }
  bool is_square() const { return rows() == cols(); }

  const Storage& storage() const { return m_; }
  DenseMatrix to_dense() const { return DenseMatrix(m_); }
  std::vector<Entry> entries() const;
  cplx coeff(Index r, Index c) const { return m_.coeff(r, c); }

  SparseOp dagger() const;
  SparseOp transpose() const;
  SparseOp conjugate() const;

  /// Largest |A - A^dagger| entry.
  double hermiticity_defect() const;
  bool is_hermitian(double tol = 1e-12) const { return hermiticity_defect() <= tol; }
  double max_abs() const;
  /// Induced 1-norm (max column sum); bounds the spectral radius.
  double norm1() const;

  SparseOp& operator+=(const SparseOp& other);
  SparseOp& operator-=(const SparseOp& other);
  SparseOp& operator*=(cplx s);

  friend SparseOp operator+(SparseOp a, const SparseOp& b) { return a += b; }
  friend SparseOp operator-(SparseOp a, const SparseOp& b) { return a -= b; }
  friend SparseOp operator*(SparseOp a, cplx s) { return a *= s; }
  friend SparseOp operator*(cplx s, SparseOp a) { return a *= s; }
  friend SparseOp operator*(const SparseOp& a, const SparseOp& b);
  friend Vector operator*(const SparseOp& a, const Vector& v);
  friend DenseMatrix operator*(const SparseOp& a, const DenseMatrix& m);
  friend DenseMatrix operator*(const DenseMatrix& m, const SparseOp& a);

  friend bool operator==(const SparseOp& a, const SparseOp& b);

 private:
  void canonicalize();
  Storage m_;
};

SparseOp add(const SparseOp& a, const SparseOp& b);
SparseOp scale(const SparseOp& a, cplx s);
SparseOp matmul(const SparseOp& a, const SparseOp& b);
SparseOp dagger(const SparseOp& a);
SparseOp kron(const SparseOp& a, const SparseOp& b);

/// tr(op * rho).
cplx expectation(const SparseOp& op, const DenseMatrix& rho);
/// <psi|op|psi> for a normalized vector.
cplx expectation(const SparseOp& op, const Vector& psi);

}  // namespace oqs
