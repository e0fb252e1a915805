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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "mf_problem.hpp"
#include "oqs/liouvillian/liouvillian.hpp"
#include "oqs/meanfield/meanfield.hpp"

namespace oqs {

namespace {

using detail::MFProblem;

/// Orthonormal basis (columns) of the traceless subspace of vec'd d x d matrices.
DenseMatrix traceless_basis(Index d) {
  DenseMatrix b = DenseMatrix::Zero(d * d, d * d - 1);
  Index col = 0;
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      if (i != j) b(i + d * j, col++) = 1.0;
    }
  }
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(d, d - 1);
  for (Index k = 0; k + 1 < d; ++k) {
    diff(k, k) = 1.0;
    diff(k + 1, k) = -1.0;
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(diff).householderQ() * Eigen::MatrixXd::Identity(d, d - 1);
  for (Index k = 0; k + 1 < d; ++k, ++col) {
    for (Index a = 0; a < d; ++a) b(a + d * a, col) = q(a, k);
  }
  return b;
}

/// vec(-i coeff [self, rho]) vec(P^T)^T: response of d rho_s / dt to a
/// change of the partner factor through <P>.
DenseMatrix coupling_block(const MFProblem::Bond& b, const DenseMatrix& rho) {
  const DenseMatrix c = cplx(0.0, -1.0) * b.coeff * (b.self_op * rho - rho * b.self_op);
  const DenseMatrix pt = b.partner_op.transpose();
  const Vector u = vectorize(c);
  const Vector w = vectorize(pt);
  return u * w.transpose();
}

std::vector<cplx> eigenvalues(const DenseMatrix& m) {
  Eigen::ComplexEigenSolver<DenseMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw ConvergenceError("mf_stability: eigenvalue solver failed");
  std::vector<cplx> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.begin(), out.end(), [](cplx a, cplx b) { return a.real() > b.real(); });
  return out;
}

double max_real(const std::vector<cplx>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (auto z : v) m = std::max(m, z.real());
  return m;
}

cplx smallest(const std::vector<cplx>& v) {
  return *std::min_element(v.begin(), v.end(), [](cplx a, cplx b) { return std::abs(a) < std::abs(b); });
}

const char* k_name(double k) { return k == 0.0 ? "0" : "pi"; }

}  // namespace

void mf_stability(const LindbladModel& model, MFSolution& solution) {
  if (!solution.converged) throw std::invalid_argument("mf_stability: solution is not converged");
  const MFProblem p(model, solution.uniform);
  std::vector<DenseMatrix> rhos;
  for (std::size_t a = 0; a < p.n_active(); ++a) rhos.push_back(solution.state.sites[p.lattice_site(a)].matrix());

  solution.modes.clear();
  solution.stability_spectrum.clear();
  if (p.uniform()) {
    const DenseMatrix& rho = rhos[0];
    const Index d = rho.rows();
    const DenseMatrix base = detail::dense_superoperator(p.hamiltonian(0, rhos), p.jumps(0));
    bool axis_used[2] = {false, false};
    for (const auto& b : p.bonds(0)) {
      if (b.axis >= 0) axis_used[b.axis] = true;
    }
    std::vector<double> kx{0.0}, ky{0.0};
    if (axis_used[0]) kx.push_back(std::numbers::pi);
    if (axis_used[1]) ky.push_back(std::numbers::pi);
    const DenseMatrix basis = traceless_basis(d);
    for (double qx : kx) {
      for (double qy : ky) {
        DenseMatrix jac = base;
        for (const auto& b : p.bonds(0)) {
          const double phase = b.axis == 0 ? std::cos(qx) : b.axis == 1 ? std::cos(qy) : 1.0;
          jac += phase * coupling_block(b, rho);
        }
        StabilityMode mode;
        mode.k = {qx, qy};
        mode.label = std::string("k=(") + k_name(qx) + "," + k_name(qy) + ")";
        mode.spectrum = eigenvalues(jac);
        mode.max_real = max_real(eigenvalues(basis.adjoint() * jac * basis));
        if (qx == 0.0 && qy == 0.0) solution.zero_mode = smallest(mode.spectrum);
        solution.stability_spectrum.insert(solution.stability_spectrum.end(), mode.spectrum.begin(),
                                           mode.spectrum.end());
        solution.modes.push_back(std::move(mode));
      }
    }
  } else {
    std::vector<Index> offset(p.n_active() + 1, 0), toffset(p.n_active() + 1, 0);
    for (std::size_t a = 0; a < p.n_active(); ++a) {
      const Index d = p.site_dim(a);
      offset[a + 1] = offset[a] + d * d;
      toffset[a + 1] = toffset[a] + d * d - 1;
    }
    DenseMatrix jac = DenseMatrix::Zero(offset.back(), offset.back());
    DenseMatrix basis = DenseMatrix::Zero(offset.back(), toffset.back());
    for (std::size_t a = 0; a < p.n_active(); ++a) {
      const Index n = offset[a + 1] - offset[a];
      jac.block(offset[a], offset[a], n, n) = detail::dense_superoperator(p.hamiltonian(a, rhos), p.jumps(a));
      for (const auto& b : p.bonds(a)) {
        const Index m = offset[b.partner + 1] - offset[b.partner];
        jac.block(offset[a], offset[b.partner], n, m) += coupling_block(b, rhos[a]);
      }
      basis.block(offset[a], toffset[a], n, n - 1) = traceless_basis(p.site_dim(a));
    }
    StabilityMode mode;
    mode.label = "lattice";
    mode.spectrum = eigenvalues(jac);
    mode.max_real = max_real(eigenvalues(basis.adjoint() * jac * basis));
    solution.zero_mode = smallest(mode.spectrum);
    solution.stability_spectrum = mode.spectrum;
    solution.modes.push_back(std::move(mode));
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& m : solution.modes) worst = std::max(worst, m.max_real);
  solution.stable = worst <= 1e-10;
  solution.stability_checked = true;
}

}  // namespace oqs
