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

#include <optional>
#include <string>
#include <vector>

#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/liouvillian/krylov.hpp"
#include "oqs/liouvillian/liouvillian.hpp"
#include "oqs/models/models.hpp"

namespace oqs {

struct SteadyStateOptions {
  /// Superoperator sizes d^2 at or below this use full dense diagonalization.
  Index dense_max_superop_dim = 64;
  /// Real shift for shift-invert Arnoldi on L#.
  double shift = -1e-9;
  /// Null vectors with |L# x|_2 below this count toward the steady manifold.
  double degeneracy_tol = 1e-8;
  int max_degeneracy = 8;
  double residual_tol = 1e-10;
  KrylovOptions krylov{};
};

struct SteadyStateResult {
  std::optional<DensityMatrix> state;
  bool unique = true;
  /// Devectorized null vectors when the steady manifold is degenerate.
  std::vector<DenseMatrix> degenerate_basis;
  /// |L# vec(rho)|_2 of the returned state.
  double residual = 0.0;
  cplx eigenvalue = 0.0;
  std::string method;
  int iterations = 0;
  /// ldagl only: smallest eigenvalue of L#^+ L# and all Ritz values of it.
  double ldagl_eigenvalue = 0.0;
  std::vector<double> ritz_values;
  /// evolve only: final time and generator trace norm.
  double time = 0.0;
  double rhs_trace_norm = 0.0;

  const DensityMatrix& rho() const;
};

/// Devectorize, fix phase so the trace is positive, Hermitize and normalize.
DenseMatrix normalize_steady_vector(const Vector& v);

/// Full dense diagonalization of L#; the reference for every iterative path.
SteadyStateResult steady_state_dense(const LindbladModel& model, const SteadyStateOptions& opts = {});
/// Eigenvalues of the dense superoperator (tests and diagnostics).
std::vector<cplx> superoperator_spectrum(const LindbladModel& model);

/// Eigenvector of L# with eigenvalue of smallest magnitude, by shift-invert Arnoldi.
SteadyStateResult steady_state_eigen(const LindbladModel& model, const SteadyStateOptions& opts = {});

/// Ground state of the Hermitian PSD L#^+ L#, by shift-invert Lanczos.
SteadyStateResult steady_state_ldagl(const LindbladModel& model, const SteadyStateOptions& opts = {});

struct EvolveSteadyOptions {
  double tol = 1e-10;
  /// RK4 step; 0 picks one from the generator's rate bound.
  double dt = 0.0;
  double t_max = 1e4;
  int check_every = 20;
};

/// Time-integrates until trace_norm(L[rho]) < tol.
SteadyStateResult steady_state_evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                      const EvolveSteadyOptions& opts = {});

/// |L# vec(rho)|_2.
double superoperator_residual(const Superoperator& l, const DenseMatrix& rho);

}  // namespace oqs
