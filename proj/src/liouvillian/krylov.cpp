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

#include "oqs/liouvillian/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace oqs {

namespace {

Vector random_unit(Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> dist;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = cplx(dist(gen), dist(gen));
  return v.normalized();
}

void project_out(Vector& v, const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v -= q * q.dot(v);
  }
}

// Builds an orthonormal Krylov basis V (n x (m+1)) and Hessenberg H ((m+1) x m).
// Returns the number of completed steps (smaller than m on breakdown).
int build_krylov(const LinearOperator& op, const Vector& start, int m, const std::vector<Vector>& deflate,
                 DenseMatrix& basis, DenseMatrix& hess) {
  const Index n = start.size();
  basis = DenseMatrix::Zero(n, m + 1);
  hess = DenseMatrix::Zero(m + 1, m);
  basis.col(0) = start;
  Vector w(n);
  for (int k = 0; k < m; ++k) {
    Vector in = basis.col(k);
    op(in, w);
    project_out(w, deflate);
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const cplx h = basis.col(i).dot(w);
        hess(i, k) += h;
        w -= h * basis.col(i);
      }
    }
    const double beta = w.norm();
    hess(k + 1, k) = beta;
    if (beta < 1e-300 || beta < 1e-14 * hess.col(k).norm()) return k + 1;
    basis.col(k + 1) = w / beta;
  }
  return m;
}

template <bool Hermitian>
KrylovResult restarted(const LinearOperator& op, Index n, const KrylovOptions& opts,
                       const std::vector<Vector>& deflate) {
  KrylovResult result;
  const int m = static_cast<int>(std::min<Index>(opts.krylov_dim, std::max<Index>(1, n - static_cast<Index>(deflate.size()))));
  Vector start = random_unit(n, opts.seed);
  project_out(start, deflate);
  start.normalize();

  DenseMatrix basis;
  DenseMatrix hess;
  Vector av(n);
  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    const int steps = build_krylov(op, start, m, deflate, basis, hess);
    const DenseMatrix h = hess.topLeftCorner(steps, steps);

    Vector y;
    cplx theta;
    std::vector<cplx> ritz;
    if constexpr (Hermitian) {
      const DenseMatrix hh = 0.5 * (h + h.adjoint());
      Eigen::SelfAdjointEigenSolver<DenseMatrix> es(hh);
      Index best = 0;
      es.eigenvalues().cwiseAbs().maxCoeff(&best);
      theta = es.eigenvalues()(best);
      y = es.eigenvectors().col(best);
      for (Index i = 0; i < es.eigenvalues().size(); ++i) ritz.emplace_back(es.eigenvalues()(i));
    } else {
      Eigen::ComplexEigenSolver<DenseMatrix> es(h);
      Index best = 0;
      es.eigenvalues().cwiseAbs().maxCoeff(&best);
      theta = es.eigenvalues()(best);
      y = es.eigenvectors().col(best).normalized();
      for (Index i = 0; i < es.eigenvalues().size(); ++i) ritz.push_back(es.eigenvalues()(i));
    }
    Vector x = basis.leftCols(steps) * y;
    x.normalize();
    op(x, av);
    project_out(av, deflate);
    const double res = (av - theta * x).norm();
    result.iterations = restart + 1;
    result.ritz_values = std::move(ritz);
    result.pairs = {RitzPair{theta, x, res}};
    if (res <= opts.tol * std::max(std::abs(theta), 1e-300)) {
      result.converged = true;
      return result;
    }
    start = x;
  }
  return result;
}

}  // namespace

KrylovResult arnoldi_largest(const LinearOperator& op, Index n, const KrylovOptions& opts,
                             const std::vector<Vector>& deflate) {
  return restarted<false>(op, n, opts, deflate);
}

KrylovResult lanczos_largest(const LinearOperator& op, Index n, const KrylovOptions& opts,
                             const std::vector<Vector>& deflate) {
  return restarted<true>(op, n, opts, deflate);
}

}  // namespace oqs
