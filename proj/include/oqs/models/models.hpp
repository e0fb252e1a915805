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
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "oqs/core/hilbert_space.hpp"
#include "oqs/core/lattice.hpp"
#include "oqs/core/sparse_op.hpp"

namespace oqs {

/// Single-site Hermitian Hamiltonian term.
struct LocalTerm {
  std::size_t site;
  SparseOp op;
};

/// coeff * op_a (on site_a) * op_b (on site_b). Individual bond terms need
/// not be Hermitian; the full set must be.
struct BondTerm {
  std::size_t site_a;
  SparseOp op_a;
  std::size_t site_b;
  SparseOp op_b;
  cplx coeff;
};

/// Jump operator supported on one site, already carrying its sqrt(rate).
struct LocalJump {
  std::size_t site;
  SparseOp op;
};

using Params = std::map<std::string, double>;

/// Hamiltonian plus jump operators on a lattice of sites. Models built from
/// local/bond terms expose that structure to the mean-field and variational
/// solvers; the full-space operators are assembled once when the space is
/// small enough.
class LindbladModel {
 public:
  static constexpr Index kMaxAssembledDim = Index{1} << 14;

  LindbladModel(std::string name, HilbertSpace space, LatticeGraph lattice, std::vector<LocalTerm> local_terms,
                std::vector<BondTerm> bond_terms, std::vector<LocalJump> jumps, Params params = {});

  /// Model given only by full-space operators. No local structure.
  static LindbladModel from_operators(std::string name, HilbertSpace space, SparseOp hamiltonian,
                                      std::vector<SparseOp> jumps, Params params = {});

  const std::string& name() const { return name_; }
  const HilbertSpace& space() const { return space_; }
  const LatticeGraph& lattice() const { return lattice_; }
  const Params& params() const { return params_; }
  double param(const std::string& key) const;
  std::size_t n_sites() const { return space_.n_sites(); }
  Index dim() const { return space_.total_dim(); }

  bool has_local_structure() const { return structured_; }
  const std::vector<LocalTerm>& local_terms() const { return local_terms_; }
  const std::vector<BondTerm>& bond_terms() const { return bond_terms_; }
  const std::vector<LocalJump>& local_jumps() const { return local_jumps_; }

  bool is_assembled() const { return assembled_ != nullptr; }
  /// Full-space operators; throw std::length_error above kMaxAssembledDim.
  const SparseOp& hamiltonian() const;
  const std::vector<SparseOp>& jumps() const;

 private:
  struct Assembled {
    SparseOp hamiltonian;
    std::vector<SparseOp> jumps;
  };

  LindbladModel() = default;
  void assemble();

  std::string name_;
  HilbertSpace space_;
  LatticeGraph lattice_;
  std::vector<LocalTerm> local_terms_;
  std::vector<BondTerm> bond_terms_;
  std::vector<LocalJump> local_jumps_;
  Params params_;
  bool structured_ = false;
  std::shared_ptr<const Assembled> assembled_;
};

/// H = (h/2) sum_i sx_i + (V/4) sum_<ij> sz_i sz_j, jumps sqrt(gamma) s-_i.
LindbladModel build_dissipative_ising(const LatticeGraph& lattice, double h, double v, double gamma);

/// H = -J sum_<ij> (b+_i b_j + b+_j b_i) + sum_i [(U/2) n_i^2 - dw n_i + F (b_i + b+_i)],
/// jumps sqrt(gamma) b_i. F is real.
LindbladModel build_driven_bose_hubbard(const LatticeGraph& lattice, double j, double u, double delta_omega, double f,
                                        double gamma, std::size_t n_max);

/// H = sum_<ij> (Jx sx sx + Jy sy sy + Jz sz sz), jumps sqrt(gamma) s-_i.
LindbladModel build_dissipative_heisenberg(const LatticeGraph& lattice, double jx, double jy, double jz, double gamma);

}  // namespace oqs
