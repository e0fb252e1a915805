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

#include "oqs/meanfield/meanfield.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mf_problem.hpp"

namespace oqs {

namespace detail {

DenseMatrix dense_superoperator(const DenseMatrix& h, const std::vector<DenseMatrix>& jumps) {
  const Index d = h.rows();
  DenseMatrix k = h;
  for (const auto& l : jumps) k -= cplx(0.0, 0.5) * (l.adjoint() * l);
  const DenseMatrix id = DenseMatrix::Identity(d, d);
  DenseMatrix s = cplx(0.0, -1.0) * kron(id, k) + cplx(0.0, 1.0) * kron(k.conjugate(), id);
  for (const auto& l : jumps) s += kron(l.conjugate(), l);
  return s;
}

namespace {

cplx trace_product(const DenseMatrix& a, const DenseMatrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

std::vector<DenseMatrix> hermitian_basis(const std::vector<DenseMatrix>& ops) {
  std::vector<DenseMatrix> basis;
  auto push = [&](DenseMatrix q) {
    for (const auto& b : basis) q -= trace_product(b, q).real() * b;
    const double nrm = std::sqrt(std::max(0.0, trace_product(q, q).real()));
    if (nrm > 1e-10) basis.push_back(q / nrm);
  };
  for (const auto& p : ops) {
    push(0.5 * (p + p.adjoint()));
    push(cplx(0.0, -0.5) * (p - p.adjoint()));
  }
  return basis;
}

}  // namespace

bool resolve_uniform(const LindbladModel& model, MFMode mode) {
  const bool possible = model.lattice().is_translation_invariant() && model.space().is_uniform();
  if (mode == MFMode::uniform && !possible) {
    throw std::invalid_argument("mean field: uniform mode needs a translation-invariant lattice");
  }
  return mode != MFMode::per_site && possible;
}

MFProblem::MFProblem(const LindbladModel& model, bool uniform) : uniform_(uniform), n_sites_(model.n_sites()) {
  if (!model.has_local_structure()) {
    throw std::invalid_argument("mean field: model '" + model.name() + "' has no local term structure");
  }
  const std::size_t n_active = uniform ? 1 : n_sites_;
  sites_.resize(n_active);
  auto active_of = [&](std::size_t site) { return uniform ? std::size_t{0} : site; };
  for (std::size_t a = 0; a < n_active; ++a) {
    const Index d = model.space().site_dim(lattice_site(a));
    sites_[a].local_h = DenseMatrix::Zero(d, d);
  }
  for (const auto& t : model.local_terms()) {
    if (uniform && t.site != 0) continue;
    sites_[active_of(t.site)].local_h += t.op.to_dense();
  }
  for (const auto& j : model.local_jumps()) {
    if (uniform && j.site != 0) continue;
    sites_[active_of(j.site)].jumps.push_back(j.op.to_dense());
  }
  for (const auto& b : model.bond_terms()) {
    const DenseMatrix op_a = b.op_a.to_dense();
    const DenseMatrix op_b = b.op_b.to_dense();
    const auto axis = model.lattice().edge_axis({std::min(b.site_a, b.site_b), std::max(b.site_a, b.site_b)});
    const int ax = axis ? *axis : -1;
    if (!uniform || b.site_a == 0) sites_[active_of(b.site_a)].bonds.push_back({op_a, active_of(b.site_b), op_b, b.coeff, {}, ax});
    if (!uniform || b.site_b == 0) sites_[active_of(b.site_b)].bonds.push_back({op_b, active_of(b.site_a), op_a, b.coeff, {}, ax});
  }

  std::vector<std::vector<DenseMatrix>> seen(n_active);
  for (const auto& s : sites_) {
    for (const auto& b : s.bonds) seen[b.partner].push_back(b.partner_op);
  }
  for (std::size_t a = 0; a < n_active; ++a) {
    sites_[a].basis = hermitian_basis(seen[a]);
    sites_[a].field_offset = n_fields_;
    n_fields_ += sites_[a].basis.size();
  }
  for (auto& s : sites_) {
    for (auto& b : s.bonds) {
      const auto& basis = sites_[b.partner].basis;
      DenseMatrix rebuilt = DenseMatrix::Zero(b.partner_op.rows(), b.partner_op.cols());
      for (const auto& q : basis) {
        b.weights.push_back(trace_product(q, b.partner_op));
        rebuilt += b.weights.back() * q;
      }
      if ((rebuilt - b.partner_op).norm() > 1e-10 * (1.0 + b.partner_op.norm())) {
        throw std::logic_error("mean field: partner operator outside its field basis");
      }
    }
  }
}

RealVector MFProblem::fields(const std::vector<DenseMatrix>& rhos) const {
  RealVector f(static_cast<Index>(n_fields_));
  for (std::size_t a = 0; a < sites_.size(); ++a) {
    for (std::size_t k = 0; k < sites_[a].basis.size(); ++k) {
      f[static_cast<Index>(sites_[a].field_offset + k)] = trace_product(sites_[a].basis[k], rhos[a]).real();
    }
  }
  return f;
}

DenseMatrix MFProblem::assemble(std::size_t active, const std::vector<cplx>& partner_expectations) const {
  const auto& s = sites_[active];
  DenseMatrix h = s.local_h;
  for (std::size_t i = 0; i < s.bonds.size(); ++i) h += (s.bonds[i].coeff * partner_expectations[i]) * s.bonds[i].self_op;
  if ((h - h.adjoint()).norm() > 1e-10 * (1.0 + h.norm())) {
    throw std::invalid_argument("mean field: decoupled Hamiltonian is not Hermitian (bond set not closed under adjoint)");
  }
  return 0.5 * (h + h.adjoint());
}

DenseMatrix MFProblem::hamiltonian(std::size_t active, const std::vector<DenseMatrix>& rhos) const {
  std::vector<cplx> e;
  for (const auto& b : sites_[active].bonds) e.push_back(trace_product(b.partner_op, rhos[b.partner]));
  return assemble(active, e);
}

DenseMatrix MFProblem::hamiltonian_from_fields(std::size_t active, const RealVector& f) const {
  std::vector<cplx> e;
  for (const auto& b : sites_[active].bonds) {
    cplx v = 0.0;
    const auto off = sites_[b.partner].field_offset;
    for (std::size_t k = 0; k < b.weights.size(); ++k) v += b.weights[k] * f[static_cast<Index>(off + k)];
    e.push_back(v);
  }
  return assemble(active, e);
}

DenseMatrix MFProblem::rhs(std::size_t active, const std::vector<DenseMatrix>& rhos) const {
  const DenseMatrix h = hamiltonian(active, rhos);
  const DenseMatrix& rho = rhos[active];
  DenseMatrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& l : sites_[active].jumps) {
    const DenseMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

double MFProblem::residual(const std::vector<DenseMatrix>& rhos) const {
  double r = 0.0;
  for (std::size_t a = 0; a < sites_.size(); ++a) {
    const DenseMatrix d = rhs(a, rhos);
    r = std::max(r, trace_norm(0.5 * (d + d.adjoint())));
  }
  return r;
}

std::vector<DenseMatrix> MFProblem::steady_from_fields(const RealVector& f) const {
  std::vector<DenseMatrix> out;
  for (std::size_t a = 0; a < sites_.size(); ++a) {
    out.push_back(local_steady_state(hamiltonian_from_fields(a, f), sites_[a].jumps));
  }
  return out;
}

std::vector<DenseMatrix> MFProblem::steady_from_states(const std::vector<DenseMatrix>& rhos) const {
  std::vector<DenseMatrix> out;
  for (std::size_t a = 0; a < sites_.size(); ++a) {
    out.push_back(local_steady_state(hamiltonian(a, rhos), sites_[a].jumps));
  }
  return out;
}

}  // namespace detail

using detail::MFProblem;

ProductState ProductState::uniform(const DensityMatrix& factor, std::size_t n_sites) {
  return ProductState{std::vector<DensityMatrix>(n_sites, factor)};
}

double ProductState::distance(const ProductState& other) const {
  if (other.sites.size() != sites.size()) throw DimensionError("ProductState::distance: site count mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    d = std::max(d, trace_distance(sites[i].matrix(), other.sites[i].matrix()));
  }
  return d;
}

double site_density(const DenseMatrix& rho) {
  if (rho.rows() == 2) return rho(0, 0).real();
  double n = 0.0;
  for (Index k = 0; k < rho.rows(); ++k) n += static_cast<double>(k) * rho(k, k).real();
  return n;
}

double mean_density(const ProductState& state) {
  if (state.sites.empty()) return 0.0;
  double s = 0.0;
  for (const auto& f : state.sites) s += site_density(f.matrix());
  return s / static_cast<double>(state.sites.size());
}

DenseMatrix local_steady_state(const DenseMatrix& h, const std::vector<DenseMatrix>& jumps) {
  const Index d = h.rows();
  DenseMatrix m = detail::dense_superoperator(h, jumps);
  for (Index c = 0; c < d * d; ++c) m(0, c) = 0.0;
  for (Index a = 0; a < d; ++a) m(0, a + d * a) = 1.0;
  Vector e = Vector::Zero(d * d);
  e[0] = 1.0;
  Eigen::FullPivLU<DenseMatrix> lu(m);
  Vector x;
  if (lu.isInvertible()) {
    x = lu.solve(e);
  } else {
    x = Eigen::BDCSVD<DenseMatrix>(m, Eigen::ComputeThinU | Eigen::ComputeThinV).solve(e);
  }
  DenseMatrix rho = Eigen::Map<const DenseMatrix>(x.data(), d, d);
  rho = 0.5 * (rho + rho.adjoint());
  return rho / rho.trace().real();
}

namespace {

void check_state(const LindbladModel& model, const ProductState& state) {
  if (state.n_sites() != model.n_sites()) throw DimensionError("mean field: product state has wrong site count");
  for (std::size_t i = 0; i < state.n_sites(); ++i) {
    if (state.sites[i].dim() != model.space().site_dim(i)) throw DimensionError("mean field: factor dimension");
  }
}

std::vector<DenseMatrix> all_factors(const ProductState& state) {
  std::vector<DenseMatrix> out;
  for (const auto& f : state.sites) out.push_back(f.matrix());
  return out;
}

bool is_uniform_state(const ProductState& s) {
  for (std::size_t i = 1; i < s.n_sites(); ++i) {
    if ((s.sites[i].matrix() - s.sites[0].matrix()).norm() > 1e-12) return false;
  }
  return true;
}

bool fixed_point(const MFProblem& p, std::vector<DenseMatrix>& rhos, const MFOptions& opts, int& iterations,
                 double& residual) {
  for (int it = 0; it < opts.max_iter; ++it) {
    residual = p.residual(rhos);
    iterations = it;
    if (residual <= opts.tol) return true;
    const auto next = p.steady_from_states(rhos);
    for (std::size_t a = 0; a < rhos.size(); ++a) rhos[a] = (1.0 - opts.damping) * rhos[a] + opts.damping * next[a];
  }
  residual = p.residual(rhos);
  iterations = opts.max_iter;
  return residual <= opts.tol;
}

bool newton(const MFProblem& p, std::vector<DenseMatrix>& rhos, const MFOptions& opts, int& iterations,
            double& residual) {
  RealVector f = p.fields(rhos);
  const Index n = f.size();
  auto defect = [&](const RealVector& x) -> RealVector { return p.fields(p.steady_from_fields(x)) - x; };
  RealVector fx = defect(f);
  const int max_newton = std::min(opts.max_iter, 100);
  int it = 0;
  for (; it < max_newton; ++it) {
    if (fx.norm() <= 1e-14 * std::max(1.0, f.norm())) break;
    Eigen::MatrixXd jac(n, n);
    for (Index k = 0; k < n; ++k) {
      const double h = 1e-7 * std::max(1.0, std::abs(f[k]));
      RealVector fp = f;
      fp[k] += h;
      RealVector fm = f;
      fm[k] -= h;
      jac.col(k) = (defect(fp) - defect(fm)) / (2.0 * h);
    }
    const RealVector step = jac.colPivHouseholderQr().solve(-fx);
    if (!step.allFinite()) break;
    double lambda = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 30; ++ls) {
      const RealVector trial = f + lambda * step;
      const RealVector ft = defect(trial);
      if (ft.allFinite() && ft.norm() < (1.0 - 1e-4 * lambda) * fx.norm()) {
        f = trial;
        fx = ft;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
  }
  iterations = it;
  rhos = p.steady_from_fields(f);
  residual = p.residual(rhos);
  return residual <= opts.tol;
}

ProductState expand(const MFProblem& p, const std::vector<DenseMatrix>& rhos) {
  ProductState out;
  const StateTolerance loose{1e-8, 1e-8, -1e-6};
  for (std::size_t i = 0; i < p.n_sites(); ++i) out.sites.emplace_back(rhos[p.uniform() ? 0 : i], loose);
  return out;
}

DensityMatrix random_factor(Index d, RngStream& rng) {
  if (d == 2) {
    double v[3];
    double nrm = 0.0;
    for (double& x : v) {
      x = rng.normal();
      nrm += x * x;
    }
    nrm = std::sqrt(nrm);
    const double r = std::cbrt(rng.uniform());
    DenseMatrix m(2, 2);
    const double x = r * v[0] / nrm, y = r * v[1] / nrm, z = r * v[2] / nrm;
    m << 0.5 * (1.0 + z), cplx(0.5 * x, -0.5 * y), cplx(0.5 * x, 0.5 * y), 0.5 * (1.0 - z);
    return DensityMatrix(m);
  }
  DenseMatrix g(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  }
  DenseMatrix m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace

std::pair<DenseMatrix, std::vector<DenseMatrix>> mf_local_generator(const LindbladModel& model,
                                                                    const ProductState& state, std::size_t site) {
  check_state(model, state);
  if (site >= model.n_sites()) throw std::out_of_range("mf_local_generator: site out of range");
  const MFProblem p(model, false);
  const auto rhos = all_factors(state);
  return {p.hamiltonian(site, rhos), p.jumps(site)};
}

DenseMatrix mf_rhs(const LindbladModel& model, const ProductState& state, std::size_t site) {
  check_state(model, state);
  if (site >= model.n_sites()) throw std::out_of_range("mf_rhs: site out of range");
  const MFProblem p(model, false);
  return p.rhs(site, all_factors(state));
}

MFSolution mf_steady(const LindbladModel& model, const ProductState& init, const MFOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("mf_steady: tol must be positive");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) throw std::invalid_argument("mf_steady: damping must be in (0, 1]");
  check_state(model, init);
  bool uniform = detail::resolve_uniform(model, opts.mode);
  if (opts.mode == MFMode::automatic && !is_uniform_state(init)) uniform = false;
  const MFProblem p(model, uniform);

  std::vector<DenseMatrix> rhos;
  if (uniform) rhos.push_back(init.sites[0].matrix());
  else rhos = all_factors(init);

  MFSolution sol;
  sol.uniform = uniform;
  if (opts.solver == MFSolver::newton) {
    sol.converged = newton(p, rhos, opts, sol.iterations, sol.residual);
  } else {
    sol.converged = fixed_point(p, rhos, opts, sol.iterations, sol.residual);
  }
  for (const auto& r : rhos) {
    if (r.rows() > 2) sol.truncation_weight = std::max(sol.truncation_weight, r(r.rows() - 1, r.rows() - 1).real());
  }
  sol.state = expand(p, rhos);
  return sol;
}

MultistartResult mf_multistart(const LindbladModel& model, int n_starts, RngStream& rng, const MFOptions& opts) {
  if (n_starts < 1) throw std::invalid_argument("mf_multistart: n_starts must be >= 1");
  const bool uniform = detail::resolve_uniform(model, opts.mode);
  MFOptions o = opts;
  o.mode = uniform ? MFMode::uniform : MFMode::per_site;

  MultistartResult out;
  const std::size_t n = model.n_sites();
  auto keep = [&](MFSolution&& sol) {
    const bool duplicate = std::any_of(out.solutions.begin(), out.solutions.end(),
                                       [&](const MFSolution& k) { return k.state.distance(sol.state) <= 1e-4; });
    if (!duplicate) out.solutions.push_back(std::move(sol));
  };
  // Local basis states and the maximally mixed state precede the random starts.
  std::vector<ProductState> inits;
  const Index d0 = model.space().site_dim(0);
  for (Index k = 0; k <= d0; ++k) {
    ProductState s;
    for (std::size_t i = 0; i < n; ++i) {
      const Index d = model.space().site_dim(i);
      s.sites.push_back(k < d0 ? DensityMatrix::basis_state(d, std::min(k, d - 1)) : DensityMatrix::maximally_mixed(d));
    }
    inits.push_back(std::move(s));
  }
  for (int s = 0; s < n_starts; ++s) {
    ProductState init;
    if (uniform) {
      init = ProductState::uniform(random_factor(model.space().site_dim(0), rng), n);
    } else {
      for (std::size_t i = 0; i < n; ++i) init.sites.push_back(random_factor(model.space().site_dim(i), rng));
    }
    inits.push_back(std::move(init));
  }
  for (const auto& init : inits) {
    ++out.starts;
    o.solver = MFSolver::newton;
    MFSolution newton = mf_steady(model, init, o);
    MFOptions damped = o;
    damped.solver = MFSolver::fixed_point;
    damped.max_iter = std::min(o.max_iter, 1000);
    MFSolution relaxed = mf_steady(model, init, damped);
    if (!newton.converged && !relaxed.converged) ++out.non_converged;
    if (newton.converged) keep(std::move(newton));
    if (relaxed.converged) keep(std::move(relaxed));
  }
  for (auto& s : out.solutions) mf_stability(model, s);
  std::sort(out.solutions.begin(), out.solutions.end(), [](const MFSolution& a, const MFSolution& b) {
    return mean_density(a.state) < mean_density(b.state);
  });
  return out;
}

}  // namespace oqs
