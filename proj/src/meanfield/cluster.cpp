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

#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "oqs/core/operators.hpp"
#include "oqs/liouvillian/liouvillian.hpp"
#include "oqs/meanfield/meanfield.hpp"

namespace oqs {

namespace {

struct BoundaryTerm {
  SparseOp self;  // embedded in the cluster space
  cplx coeff;
  std::size_t partner;  // cluster index whose reduced state supplies <P>
  DenseMatrix partner_op;
};

DenseMatrix cluster_steady(const SparseOp& h, const std::vector<SparseOp>& jumps) {
  const Superoperator l = build_superoperator(h, jumps);
  const Index d = l.dim;
  const Index n = d * d;
  std::vector<Eigen::Triplet<cplx>> trip;
  for (const auto& e : l.matrix.entries()) {
    if (e.row != 0) trip.emplace_back(e.row, e.col, e.value);
  }
  for (Index a = 0; a < d; ++a) trip.emplace_back(0, a + d * a, 1.0);
  Eigen::SparseMatrix<cplx> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) throw ConvergenceError("cluster_mf_steady: cluster steady state is not unique");
  Vector e = Vector::Zero(n);
  e[0] = 1.0;
  const Vector x = lu.solve(e);
  DenseMatrix rho = devectorize(x);
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

}  // namespace

ClusterSolution cluster_mf_steady(const LindbladModel& model, std::pair<std::size_t, std::size_t> cluster_dims,
                                  const MFOptions& opts, const std::optional<DensityMatrix>& init) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("cluster_mf_steady: tol must be positive");
  if (!model.has_local_structure()) throw std::invalid_argument("cluster_mf_steady: model has no local structure");
  const auto& lat = model.lattice();
  if (!lat.has_shape()) throw std::invalid_argument("cluster_mf_steady: lattice has no grid shape");
  const auto [lx, ly] = lat.shape();
  const auto [cx, cy] = cluster_dims;
  if (cx < 1 || cy < 1 || lx % cx != 0 || ly % cy != 0) {
    throw std::invalid_argument("cluster_mf_steady: cluster does not tile the lattice");
  }
  const bool whole = cx == lx && cy == ly;
  if (!whole && !lat.is_translation_invariant()) {
    throw std::invalid_argument("cluster_mf_steady: tiling needs a translation-invariant lattice");
  }

  const std::size_t nc = cx * cy;
  std::vector<std::size_t> cluster_of(lat.n_sites());
  std::vector<bool> inside(lat.n_sites(), false);
  std::vector<std::size_t> dims(nc);
  for (std::size_t s = 0; s < lat.n_sites(); ++s) {
    const auto [x, y] = lat.coordinates(s);
    cluster_of[s] = (y % cy) * cx + (x % cx);
    inside[s] = x < cx && y < cy;
    if (inside[s]) dims[cluster_of[s]] = model.space().site_dim(s);
  }
  const HilbertSpace space(dims);
  if (space.total_dim() > kClusterMaxDim) {
    throw std::invalid_argument("cluster_mf_steady: cluster dimension exceeds " + std::to_string(kClusterMaxDim));
  }

  SparseOp h_int = SparseOp::zero(space.total_dim(), space.total_dim());
  for (const auto& t : model.local_terms()) {
    if (inside[t.site]) h_int += embed(t.op, cluster_of[t.site], space);
  }
  std::vector<SparseOp> jumps;
  for (const auto& j : model.local_jumps()) {
    if (inside[j.site]) jumps.push_back(embed(j.op, cluster_of[j.site], space));
  }
  std::vector<BoundaryTerm> boundary;
  for (const auto& b : model.bond_terms()) {
    const bool ia = inside[b.site_a], ib = inside[b.site_b];
    if (ia && ib) {
      h_int += embed_pair(b.op_a, cluster_of[b.site_a], b.op_b, cluster_of[b.site_b], space) * b.coeff;
    } else if (ia) {
      boundary.push_back({embed(b.op_a, cluster_of[b.site_a], space), b.coeff, cluster_of[b.site_b], b.op_b.to_dense()});
    } else if (ib) {
      boundary.push_back({embed(b.op_b, cluster_of[b.site_b], space), b.coeff, cluster_of[b.site_a], b.op_a.to_dense()});
    }
  }

  std::vector<DensityMatrix> factors;
  for (std::size_t c = 0; c < nc; ++c) {
    factors.push_back(init ? *init : DensityMatrix::maximally_mixed(static_cast<Index>(dims[c])));
    if (factors.back().dim() != static_cast<Index>(dims[c])) throw DimensionError("cluster_mf_steady: init factor dimension");
  }
  DenseMatrix rho = DensityMatrix::product(factors).matrix();

  auto hamiltonian = [&](const DenseMatrix& r) {
    std::vector<DenseMatrix> reduced(nc);
    if (!boundary.empty()) {
      for (std::size_t c = 0; c < nc; ++c) reduced[c] = partial_trace(r, space, {c});
    }
    SparseOp h = h_int;
    for (const auto& t : boundary) {
      const cplx ev = t.partner_op.cwiseProduct(reduced[t.partner].transpose()).sum();
      h += t.self * (t.coeff * ev);
    }
    const DenseMatrix hd = h.to_dense();
    return SparseOp::from_dense(0.5 * (hd + hd.adjoint()));
  };

  ClusterSolution out;
  out.cluster_dims = cluster_dims;
  for (int it = 0;; ++it) {
    const SparseOp h = hamiltonian(rho);
    const DenseMatrix d = LindbladGenerator(h, jumps).apply(rho);
    out.residual = trace_norm(0.5 * (d + d.adjoint()));
    out.iterations = it;
    if (out.residual <= opts.tol) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iter) break;
    const DenseMatrix next = cluster_steady(h, jumps);
    rho = (1.0 - opts.damping) * rho + opts.damping * next;
  }
  const StateTolerance loose{1e-8, 1e-8, -1e-6};
  out.cluster_state = DensityMatrix(rho, loose);
  std::vector<DensityMatrix> reduced;
  for (std::size_t c = 0; c < nc; ++c) reduced.emplace_back(partial_trace(rho, space, {c}), loose);
  for (std::size_t s = 0; s < lat.n_sites(); ++s) out.sites.sites.push_back(reduced[cluster_of[s]]);
  return out;
}

}  // namespace oqs
