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

#include "oqs/liouvillian/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

namespace oqs {

namespace {

using ColSparse = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

ColSparse shifted(const SparseOp& a, cplx shift) {
  ColSparse m = a.storage();
  ColSparse id(m.rows(), m.cols());
  id.setIdentity();
  m -= shift * id;
  m.makeCompressed();
  return m;
}

// Fills state/residual from a null vector, or records it as a degenerate basis
// member.
void finish(SteadyStateResult& r, const Superoperator& l, const std::vector<Vector>& null_vectors) {
  r.unique = null_vectors.size() == 1;
  if (!r.unique) {
    for (const auto& v : null_vectors) r.degenerate_basis.push_back(devectorize(v));
  }
  for (const auto& v : null_vectors) {
    try {
      DensityMatrix rho(normalize_steady_vector(v));
      r.residual = superoperator_residual(l, rho.matrix());
      r.state = std::move(rho);
      break;
    } catch (const std::exception&) {
      if (r.unique) throw;
    }
  }
}

}  // namespace

const DensityMatrix& SteadyStateResult::rho() const {
  if (!state) throw std::logic_error("SteadyStateResult: no valid steady state (degenerate manifold)");
  return *state;
}

DenseMatrix normalize_steady_vector(const Vector& v) {
  DenseMatrix x = devectorize(v);
  const cplx tr = x.trace();
  if (std::abs(tr) < 1e-12 * x.norm()) throw InvariantError("steady state: null vector is traceless");
  x /= tr;
  DenseMatrix herm = 0.5 * (x + x.adjoint());
  herm /= herm.trace().real();
  return herm;
}

double superoperator_residual(const Superoperator& l, const DenseMatrix& rho) {
  return (l.matrix * vectorize(rho)).norm();
}

std::vector<cplx> superoperator_spectrum(const LindbladModel& model) {
  const auto l = build_superoperator(model);
  Eigen::ComplexEigenSolver<DenseMatrix> es(l.matrix.to_dense(), false);
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return out;
}

SteadyStateResult steady_state_dense(const LindbladModel& model, const SteadyStateOptions& opts) {
  const auto l = build_superoperator(model);
  const DenseMatrix dense = l.matrix.to_dense();
  SteadyStateResult r;
  r.method = "dense";

  Eigen::ComplexEigenSolver<DenseMatrix> es(dense);
  Index best = 0;
  es.eigenvalues().cwiseAbs().minCoeff(&best);
  r.eigenvalue = es.eigenvalues()(best);

  // Null space dimension from singular values is robust against non-normal
  // eigenvector conditioning.
  Eigen::BDCSVD<DenseMatrix> svd(dense, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Vector> null_vectors;
  for (Index k = sv.size() - 1; k >= 0; --k) {
    if (sv(k) > opts.degeneracy_tol) break;
    null_vectors.push_back(svd.matrixV().col(k));
  }
  if (null_vectors.empty()) {
    std::ostringstream os;
    os << "steady_state_dense: no null vector (smallest singular value " << sv(sv.size() - 1) << ")";
    throw ConvergenceError(os.str());
  }
  if (null_vectors.size() == 1) null_vectors.front() = es.eigenvectors().col(best);
  finish(r, l, null_vectors);
  return r;
}

SteadyStateResult steady_state_eigen(const LindbladModel& model, const SteadyStateOptions& opts) {
  const Index d = model.dim();
  if (d * d <= opts.dense_max_superop_dim) return steady_state_dense(model, opts);

  const auto l = build_superoperator(model);
  const Index n = d * d;
  Eigen::SparseLU<ColSparse, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(shifted(l.matrix, opts.shift));
  if (lu.info() != Eigen::Success) throw ConvergenceError("steady_state_eigen: shift-invert factorization failed");
  LinearOperator op = [&lu](const Vector& in, Vector& out) { out = lu.solve(in); };

  SteadyStateResult r;
  r.method = "eigen";
  std::vector<Vector> found;
  Vector lx(n);
  for (int k = 0; k < opts.max_degeneracy; ++k) {
    KrylovOptions ko = opts.krylov;
    if (k > 0) ko.max_restarts = std::min(ko.max_restarts, 4);
    const auto kr = arnoldi_largest(op, n, ko, found);
    r.iterations += kr.iterations;
    const Vector& x = kr.pairs.front().vector;
    lx = l.matrix * x;
    if (k == 0) {
      r.eigenvalue = x.dot(lx);
      if (lx.norm() > opts.degeneracy_tol) {
        std::ostringstream os;
        os << "steady_state_eigen: smallest-magnitude eigenvector has residual " << lx.norm();
        throw ConvergenceError(os.str());
      }
    } else if (lx.norm() > opts.degeneracy_tol) {
      break;
    }
    found.push_back(x);
  }
  finish(r, l, found);
  if (r.unique && r.residual > opts.residual_tol) {
    std::ostringstream os;
    os << "steady_state_eigen: residual " << r.residual << " above " << opts.residual_tol;
    throw ConvergenceError(os.str());
  }
  return r;
}

SteadyStateResult steady_state_ldagl(const LindbladModel& model, const SteadyStateOptions& opts) {
  const Index d = model.dim();
  const auto l = build_superoperator(model);
  const SparseOp ldl = l.matrix.dagger() * l.matrix;
  const double scale = std::max(ldl.norm1(), 1e-300);
  const Index n = d * d;

  SteadyStateResult r;
  std::vector<Vector> found;

  if (n <= opts.dense_max_superop_dim) {
    r.method = "ldagl-dense";
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(ldl.to_dense());
    for (Index k = 0; k < es.eigenvalues().size(); ++k) r.ritz_values.push_back(es.eigenvalues()(k));
    r.ldagl_eigenvalue = es.eigenvalues()(0);
    for (Index k = 0; k < es.eigenvalues().size() && static_cast<int>(found.size()) < opts.max_degeneracy; ++k) {
      const Vector x = es.eigenvectors().col(k);
      if ((l.matrix * x).norm() > opts.degeneracy_tol) break;
      found.push_back(x);
    }
  } else {
    r.method = "ldagl";
    // With A = L# - shift, (A^+ A)^-1 = A^-1 A^-+ shares its top eigenvector with
    // the bottom one of L#^+ L# up to O(shift); one LU of A serves both solves.
    Eigen::SparseLU<ColSparse, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(shifted(l.matrix, opts.shift));
    if (lu.info() != Eigen::Success) throw ConvergenceError("steady_state_ldagl: factorization failed");
    LinearOperator op = [&lu](const Vector& in, Vector& out) {
      const Vector mid = lu.adjoint().solve(in);
      out = lu.solve(mid);
    };
    for (int k = 0; k < opts.max_degeneracy; ++k) {
      KrylovOptions ko = opts.krylov;
      if (k > 0) ko.max_restarts = std::min(ko.max_restarts, 4);
      const auto kr = lanczos_largest(op, n, ko, found);
      r.iterations += kr.iterations;
      const Vector& x = kr.pairs.front().vector;
      const double lx = (l.matrix * x).norm();
      if (k == 0) {
        for (const auto& theta : kr.ritz_values) r.ritz_values.push_back(1.0 / theta.real());
        r.ldagl_eigenvalue = lx * lx;
      } else if (lx > opts.degeneracy_tol) {
        break;
      }
      if (lx > opts.degeneracy_tol) break;
      found.push_back(x);
    }
  }
  if (found.empty() || r.ldagl_eigenvalue > 1e-16 * scale) {
    std::ostringstream os;
    os << "steady_state_ldagl: smallest eigenvalue of L^+L is " << r.ldagl_eigenvalue << " (scale " << scale
       << "); no steady state at tolerance";
    throw ConvergenceError(os.str());
  }
  finish(r, l, found);
  r.eigenvalue = found.front().dot(l.matrix * found.front());
  return r;
}

SteadyStateResult steady_state_evolve(const LindbladModel& model, const DensityMatrix& rho0,
                                      const EvolveSteadyOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("steady_state_evolve: tol must be positive");
  const LindbladGenerator gen(model);
  if (rho0.dim() != gen.dim()) throw DimensionError("steady_state_evolve: initial state dimension");
  const double dt = opts.dt > 0.0 ? opts.dt : 1.0 / std::max(gen.rate_bound(), 1e-12);
  DenseMatrix rho = rho0.matrix();
  double t = 0.0;
  SteadyStateResult r;
  r.method = "evolve";
  long step = 0;
  for (;;) {
    if (step % opts.check_every == 0) {
      rho = 0.5 * (rho + rho.adjoint());
      rho /= rho.trace().real();
      r.rhs_trace_norm = trace_norm(gen(rho));
      if (r.rhs_trace_norm < opts.tol) break;
      if (t > opts.t_max) {
        std::ostringstream os;
        os << "steady_state_evolve: not converged by t = " << t << " (|L rho|_1 = " << r.rhs_trace_norm
           << "); slow relaxation or degenerate steady manifold";
        throw ConvergenceError(os.str());
      }
    }
    const DenseMatrix k1 = gen(rho);
    const DenseMatrix k2 = gen(rho + (0.5 * dt) * k1);
    const DenseMatrix k3 = gen(rho + (0.5 * dt) * k2);
    const DenseMatrix k4 = gen(rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += dt;
    ++step;
  }
  r.time = t;
  r.iterations = static_cast<int>(step);
  r.state = DensityMatrix(rho);
  if (model.dim() <= LindbladModel::kMaxAssembledDim) {
    r.residual = (build_superoperator(model).matrix * vectorize(rho)).norm();
  }
  return r;
}

}  // namespace oqs
