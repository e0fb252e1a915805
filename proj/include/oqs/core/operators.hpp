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

#include "oqs/core/hilbert_space.hpp"
#include "oqs/core/sparse_op.hpp"

namespace oqs {

enum class Pauli { x, y, z, plus, minus };

/// Qubit basis is (up, down), so sigma_z = diag(+1, -1) and sigma_minus
/// maps up to down.
SparseOp pauli(Pauli kind);

struct BosonOps {
  SparseOp annihilate;
  SparseOp create;
  SparseOp number;
};

/// Fock space truncated at occupation n_max, dimension n_max + 1.
BosonOps boson_ops(std::size_t n_max);

/// I (x) ... (x) op (x) ... (x) I with op on `site`.
SparseOp embed(const SparseOp& op, std::size_t site, const HilbertSpace& space);

/// embed(op_a, site_a) * embed(op_b, site_b) for distinct sites.
SparseOp embed_pair(const SparseOp& op_a, std::size_t site_a, const SparseOp& op_b, std::size_t site_b,
                    const HilbertSpace& space);

}  // namespace oqs
