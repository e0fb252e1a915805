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

#include "oqs/core/types.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/models/models.hpp"

namespace oqs::detail {

/// Dense d^2 x d^2 generator of -i(K rho - rho K^+) + sum L rho L^+ in
/// column stacking.
DenseMatrix dense_superoperator(const DenseMatrix& h, const std::vector<DenseMatrix>& jumps);

/// Mean-field decoupling of a structured model. "Active" sites are the ones
/// carrying independent factors: only site 0 in uniform mode, every site
/// otherwise. Fields are the real coordinates tr(Q_k rho_s) of each active
/// factor along a Hilbert-Schmidt orthonormal Hermitian basis Q_k spanning
/// the operators that neighbours see.
class MFProblem {
 public:
  struct Bond {
    DenseMatrix self_op;
    std::size_t partner;  // active index of the partner factor
    DenseMatrix partner_op;
    cplx coeff;
    std::vector<cplx> weights;  // partner_op = sum_k weights[k] Q_{partner,k}
    int axis = -1;              // lattice axis of the bond, -1 if unknown
  };

  MFProblem(const LindbladModel& model, bool uniform);

  bool uniform() const { return uniform_; }
  std::size_t n_active() const { return sites_.size(); }
  std::size_t n_sites() const { return n_sites_; }
  Index site_dim(std::size_t active) const { return sites_[active].local_h.rows(); }
  const std::vector<Bond>& bonds(std::size_t active) const { return sites_[active].bonds; }
  const std::vector<DenseMatrix>& jumps(std::size_t active) const { return sites_[active].jumps; }
  /// Lattice site represented by an active index (identity in per-site mode).
  std::size_t lattice_site(std::size_t active) const { return uniform_ ? 0 : active; }

  std::size_t n_fields() const { return n_fields_; }
  RealVector fields(const std::vector<DenseMatrix>& rhos) const;

  DenseMatrix hamiltonian(std::size_t active, const std::vector<DenseMatrix>& rhos) const;
  DenseMatrix hamiltonian_from_fields(std::size_t active, const RealVector& f) const;
  DenseMatrix rhs(std::size_t active, const std::vector<DenseMatrix>& rhos) const;
  double residual(const std::vector<DenseMatrix>& rhos) const;

  /// Steady state of each active site's generator at frozen fields.
  std::vector<DenseMatrix> steady_from_fields(const RealVector& f) const;
  std::vector<DenseMatrix> steady_from_states(const std::vector<DenseMatrix>& rhos) const;

 private:
  struct Site {
    DenseMatrix local_h;
    std::vector<DenseMatrix> jumps;
    std::vector<Bond> bonds;
    std::vector<DenseMatrix> basis;
    std::size_t field_offset = 0;
  };

  DenseMatrix assemble(std::size_t active, const std::vector<cplx>& partner_expectations) const;

  bool uniform_;
  std::size_t n_sites_;
  std::vector<Site> sites_;
  std::size_t n_fields_ = 0;
};

bool resolve_uniform(const LindbladModel& model, MFMode mode);

}  // namespace oqs::detail
