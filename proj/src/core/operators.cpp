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

#include "oqs/core/operators.hpp"

#include <cmath>
#include <string>

namespace oqs {

SparseOp pauli(Pauli kind) {
  switch (kind) {
    case Pauli::x:
      return SparseOp::from_entries(2, 2, {{0, 1, 1.0}, {1, 0, 1.0}});
    case Pauli::y:
      return SparseOp::from_entries(2, 2, {{0, 1, -kI}, {1, 0, kI}});
    case Pauli::z:
      return SparseOp::from_entries(2, 2, {{0, 0, 1.0}, {1, 1, -1.0}});
    case Pauli::plus:
      return SparseOp::from_entries(2, 2, {{0, 1, 1.0}});
    case Pauli::minus:
      return SparseOp::from_entries(2, 2, {{1, 0, 1.0}});
  }
  throw std::invalid_argument("pauli: unknown kind");
}

BosonOps boson_ops(std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("boson_ops: n_max must be >= 1");
  const auto d = static_cast<Index>(n_max + 1);
  std::vector<Entry> a;
  for (Index n = 1; n < d; ++n) a.push_back({n - 1, n, std::sqrt(static_cast<double>(n))});
  BosonOps ops;
  ops.annihilate = SparseOp::from_entries(d, d, a);
  ops.create = ops.annihilate.dagger();
  ops.number = ops.create * ops.annihilate;
  return ops;
}

SparseOp embed(const SparseOp& op, std::size_t site, const HilbertSpace& space) {
  if (site >= space.n_sites()) throw std::out_of_range("embed: site " + std::to_string(site) + " out of range");
  if (op.rows() != space.site_dim(site) || op.cols() != space.site_dim(site)) {
    throw DimensionError("embed: operator dimension does not match site " + std::to_string(site));
  }
  const Index left = space.left_dim(site);
  const Index right = space.right_dim(site);
  const Index local = op.rows();
  // Direct assembly: entry (i, j) of op lands at (l*local*right + i*right + r, ...).
  std::vector<Entry> out;
  out.reserve(static_cast<std::size_t>(left * right * op.nnz()));
  const auto entries = op.entries();
  for (Index l = 0; l < left; ++l) {
    for (const auto& e : entries) {
      const Index row0 = (l * local + e.row) * right;
      const Index col0 = (l * local + e.col) * right;
      for (Index r = 0; r < right; ++r) out.push_back({row0 + r, col0 + r, e.value});
    }
  }
  return SparseOp::from_entries(space.total_dim(), space.total_dim(), out);
}

SparseOp embed_pair(const SparseOp& op_a, std::size_t site_a, const SparseOp& op_b, std::size_t site_b,
                    const HilbertSpace& space) {
  if (site_a == site_b) throw std::invalid_argument("embed_pair: sites must differ");
  return embed(op_a, site_a, space) * embed(op_b, site_b, space);
}

}  // namespace oqs
