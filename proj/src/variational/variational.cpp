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

#include "oqs/variational/variational.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oqs {

namespace {

struct Coupling {
  DenseMatrix self_op;
  std::size_t partner;
  DenseMatrix partner_op;
  cplx coeff;
};

cplx trace_product(const DenseMatrix& a, const DenseMatrix& b) { return a.cwiseProduct(b.transpose()).sum(); }

DenseMatrix hermitian_part(const DenseMatrix& m) { return 0.5 * (m + m.adjoint()); }

DenseMatrix apply_generator(const DenseMatrix& h, const std::vector<DenseMatrix>& jumps, const DenseMatrix& rho) {
  DenseMatrix out = cplx(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& l : jumps) {
    const DenseMatrix ldl = l.adjoint() * l;
    out += l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

/// Local data of a structured model for the pair bound.
class PairProblem {
 public:
  explicit PairProblem(const LindbladModel& model) : lattice_(model.lattice()) {
    if (!model.has_local_structure()) {
      throw std::invalid_argument("variational: model '" + model.name() + "' has no local term structure");
    }
    const std::size_t n = model.n_sites();
    sites_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
      const Index d = model.space().site_dim(s);
      sites_[s].h = DenseMatrix::Zero(d, d);
    }
    for (const auto& t : model.local_terms()) sites_[t.site].h += t.op.to_dense();
    for (const auto& j : model.local_jumps()) sites_[j.site].jumps.push_back(j.op.to_dense());
    const auto& edges = lattice_.edges();
    for (const auto& b : model.bond_terms()) {
      const Edge e{std::min(b.site_a, b.site_b), std::max(b.site_a, b.site_b)};
      if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
        throw std::invalid_argument("variational: bond term between sites that are not a lattice edge");
      }
      sites_[b.site_a].couplings.push_back({b.op_a.to_dense(), b.site_b, b.op_b.to_dense(), b.coeff});
      sites_[b.site_b].couplings.push_back({b.op_b.to_dense(), b.site_a, b.op_a.to_dense(), b.coeff});
    }
  }

  const LatticeGraph& lattice() const { return lattice_; }
  std::size_t n_sites() const { return sites_.size(); }

  /// Local Hamiltonian of `site` with every coupling except those to `exclude` decoupled.
  DenseMatrix dressed(std::size_t site, std::size_t exclude, const std::vector<DenseMatrix>& rhos) const {
    DenseMatrix h = sites_[site].h;
    for (const auto& c : sites_[site].couplings) {
      if (c.partner == exclude) continue;
      h += (c.coeff * trace_product(c.partner_op, rhos[c.partner])) * c.self_op;
    }
    return h;
  }

  DenseMatrix single_rhs(std::size_t i, const std::vector<DenseMatrix>& rhos) const {
    return hermitian_part(apply_generator(dressed(i, i, rhos), sites_[i].jumps, rhos[i]));
  }

  DenseMatrix pair_rhs(std::size_t i, std::size_t j, const std::vector<DenseMatrix>& rhos) const {
    const Index di = rhos[i].rows(), dj = rhos[j].rows();
    const DenseMatrix ii = DenseMatrix::Identity(di, di), ij = DenseMatrix::Identity(dj, dj);
    DenseMatrix h = kron(dressed(i, j, rhos), ij) + kron(ii, dressed(j, i, rhos));
    for (const auto& c : sites_[i].couplings) {
      if (c.partner == j) h += c.coeff * kron(c.self_op, c.partner_op);
    }
    std::vector<DenseMatrix> jumps;
    for (const auto& l : sites_[i].jumps) jumps.push_back(kron(l, ij));
    for (const auto& l : sites_[j].jumps) jumps.push_back(kron(ii, l));
    return hermitian_part(apply_generator(h, jumps, kron(rhos[i], rhos[j])));
  }

  /// Edges entering the bound and the weight of each: every edge once, or in
  /// translation-invariant mode the edges at site 0 with weight N / 2.
  std::vector<std::pair<Edge, double>> terms(bool uniform) const {
    std::vector<std::pair<Edge, double>> out;
    const double w = uniform ? 0.5 * static_cast<double>(n_sites()) : 1.0;
    for (const auto& e : lattice_.edges()) {
      if (!uniform || e.a == 0 || e.b == 0) out.push_back({e, w});
    }
    return out;
  }

  std::vector<std::pair<std::size_t, double>> isolated(bool uniform) const {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t s = 0; s < n_sites(); ++s) {
      if (lattice_.degree(s) != 0) continue;
      if (uniform) return {{0, static_cast<double>(n_sites())}};
      out.push_back({s, 1.0});
    }
    return out;
  }

 private:
  struct Site {
    DenseMatrix h;
    std::vector<DenseMatrix> jumps;
    std::vector<Coupling> couplings;
  };
  LatticeGraph lattice_;
  std::vector<Site> sites_;
};

std::vector<DenseMatrix> factors(const ProductState& s) {
  std::vector<DenseMatrix> out;
  for (const auto& f : s.sites) out.push_back(f.matrix());
  return out;
}

void check_state(const LindbladModel& model, const ProductState& state) {
  if (state.n_sites() != model.n_sites()) throw DimensionError("variational: product state has wrong site count");
  for (std::size_t i = 0; i < state.n_sites(); ++i) {
    if (state.sites[i].dim() != model.space().site_dim(i)) throw DimensionError("variational: factor dimension");
  }
}

double bound_terms(const PairProblem& p, const std::vector<DenseMatrix>& rhos, bool uniform) {
  double d = 0.0;
  for (const auto& [e, w] : p.terms(uniform)) d += w * trace_norm(p.pair_rhs(e.a, e.b, rhos));
  for (const auto& [s, w] : p.isolated(uniform)) d += w * trace_norm(p.single_rhs(s, rhos));
  return d;
}

bool use_uniform(const LindbladModel& model, const VariationalAnsatz& a) {
  return a.translation_invariant && model.lattice().is_translation_invariant();
}

}  // namespace

DenseMatrix rhs_two_site(const LindbladModel& model, const ProductState& state, std::size_t i, std::size_t j) {
  check_state(model, state);
  const auto& edges = model.lattice().edges();
  if (i == j || std::find(edges.begin(), edges.end(), Edge{std::min(i, j), std::max(i, j)}) == edges.end()) {
    throw std::invalid_argument("rhs_two_site: sites are not a coupled pair");
  }
  const PairProblem p(model);
  return p.pair_rhs(i, j, factors(state));
}

double bound_D(const LindbladModel& model, const ProductState& state) {
  check_state(model, state);
  const PairProblem p(model);
  return bound_terms(p, factors(state), false);
}

VariationalResult minimize_D(const LindbladModel& model, const VariationalAnsatz& init, const VariationalOptions& opts) {
  if (init.site_dims.size() != model.n_sites()) throw DimensionError("minimize_D: ansatz site count");
  for (std::size_t i = 0; i < model.n_sites(); ++i) {
    if (init.site_dims[i] != model.space().site_dim(i)) throw DimensionError("minimize_D: ansatz site dimension");
  }
  if (opts.n_restarts < 0) throw std::invalid_argument("minimize_D: n_restarts must be >= 0");
  const PairProblem p(model);
  const bool uniform = use_uniform(model, init);
  VariationalAnsatz work = init;
  const Objective f = [&](const RealVector& x) {
    work.params = x;
    return bound_terms(p, factors(work.decode()), uniform);
  };
  NelderMeadOptions nm = opts.nm;
  if (nm.target < 0.0) nm.target = 1e-14;

  VariationalResult best;
  best.initial_D = f(init.params);
  RealVector best_x = init.params;
  double best_value = best.initial_D;
  for (int run = 0; run <= opts.n_restarts; ++run) {
    RealVector x0 = init.params;
    if (run > 0) {
      RngStream rng(opts.seed, static_cast<std::uint64_t>(run));
      for (Index k = 0; k < x0.size(); ++k) x0[k] = rng.normal();
    }
    const auto r = nelder_mead(f, x0, nm);
    best.evaluations += r.evaluations;
    best.iterations += r.iterations;
    best.restarts_used = run;
    if (run == 0 || r.value < best_value) {
      best_value = r.value;
      best_x = r.x;
      best.best_run = run;
      best.converged = r.converged;
    }
    if (best_value <= nm.target) break;
  }
  best.ansatz = init;
  best.ansatz.params = best_x;
  best.state = best.ansatz.decode();
  best.D_value = bound_D(model, best.state);
  best.stagnated = best.initial_D > nm.target && !(best.D_value < best.initial_D);
  return best;
}

StepResult variational_step(const LindbladModel& model, const ProductState& state, double tau, StepScheme scheme,
                            bool translation_invariant, const NelderMeadOptions& nm_in) {
  if (!(tau > 0.0)) throw std::invalid_argument("variational_step: tau must be positive");
  check_state(model, state);
  const PairProblem p(model);
  const VariationalAnsatz init = VariationalAnsatz::from_state(state, translation_invariant);
  const bool uniform = use_uniform(model, init);
  const auto rho = factors(state);
  const auto terms = p.terms(uniform);
  const auto lone = p.isolated(uniform);

  std::vector<DenseMatrix> euler_pair, euler_single;
  if (scheme == StepScheme::euler) {
    for (const auto& [e, w] : terms) euler_pair.push_back(kron(rho[e.a], rho[e.b]) + tau * p.pair_rhs(e.a, e.b, rho));
    for (const auto& [s, w] : lone) euler_single.push_back(rho[s] + tau * p.single_rhs(s, rho));
  }

  VariationalAnsatz work = init;
  const Objective f = [&](const RealVector& x) {
    work.params = x;
    const auto next = factors(work.decode());
    std::vector<DenseMatrix> mid;
    if (scheme == StepScheme::implicit_midpoint) {
      for (std::size_t k = 0; k < rho.size(); ++k) mid.push_back(0.5 * (rho[k] + next[k]));
    }
    double total = 0.0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const auto& [e, w] = terms[t];
      DenseMatrix r = kron(next[e.a], next[e.b]);
      if (scheme == StepScheme::euler) r -= euler_pair[t];
      else r -= kron(rho[e.a], rho[e.b]) + tau * p.pair_rhs(e.a, e.b, mid);
      total += w * trace_norm(hermitian_part(r));
    }
    for (std::size_t t = 0; t < lone.size(); ++t) {
      const auto& [s, w] = lone[t];
      DenseMatrix r = next[s];
      if (scheme == StepScheme::euler) r -= euler_single[t];
      else r -= rho[s] + tau * p.single_rhs(s, mid);
      total += w * trace_norm(hermitian_part(r));
    }
    return total;
  };

  NelderMeadOptions nm = nm_in;
  nm.initial_step = std::min(nm.initial_step, std::max(1e-4, 4.0 * tau));
  const auto r = nelder_mead(f, init.params, nm);
  StepResult out;
  out.ansatz = init;
  out.ansatz.params = r.x;
  out.state = out.ansatz.decode();
  out.residual = r.value;
  out.evaluations = r.evaluations;
  out.converged = r.converged;
  return out;
}

namespace {

SweepPoint sweep_point(const ModelFamily1D& family, double param, const SweepOptions& opts,
                       const std::optional<VariationalAnsatz>& warm) {
  const LindbladModel model = family(param);
  if (warm) {
    const auto r = minimize_D(model, *warm, opts.var);
    return {param, mean_density(r.state), r.D_value, r.restarts_used, r.ansatz};
  }
  ProductState mixed;
  for (std::size_t i = 0; i < model.n_sites(); ++i) {
    mixed.sites.push_back(DensityMatrix::maximally_mixed(model.space().site_dim(i)));
  }
  auto best = minimize_D(model, VariationalAnsatz::from_state(mixed, opts.translation_invariant), opts.var);
  // Local basis product states as extra deterministic starts.
  VariationalOptions polish = opts.var;
  polish.n_restarts = 0;
  Index d_max = 0;
  for (std::size_t i = 0; i < model.n_sites(); ++i) d_max = std::max(d_max, model.space().site_dim(i));
  for (Index k = 0; k < d_max; ++k) {
    ProductState basis;
    for (std::size_t i = 0; i < model.n_sites(); ++i) {
      const Index d = model.space().site_dim(i);
      basis.sites.push_back(DensityMatrix::basis_state(d, std::min(k, d - 1)));
    }
    const auto r = minimize_D(model, VariationalAnsatz::from_state(basis, opts.translation_invariant), polish);
    if (r.D_value < best.D_value) best = r;
  }
  return {param, mean_density(best.state), best.D_value, best.restarts_used, best.ansatz};
}


/// Re-minimizes point k from the optima of its neighbours; keeps the lowest D.
SweepPoint neighbour_polish(const ModelFamily1D& family, const std::vector<SweepPoint>& pts, std::size_t k,
                            const SweepOptions& opts) {
  SweepPoint best = pts[k];
  VariationalOptions polish = opts.var;
  polish.n_restarts = 0;
  const LindbladModel model = family(pts[k].parameter);
  for (std::size_t nb : {k - 1, k + 1}) {
    if (nb >= pts.size()) continue;
    const auto r = minimize_D(model, pts[nb].ansatz, polish);
    if (r.D_value < best.D_value - 1e-10 * (1.0 + best.D_value)) {
      best = {pts[k].parameter, mean_density(r.state), r.D_value, pts[k].restarts_used, r.ansatz};
    }
  }
  return best;
}

bool adopt(std::vector<SweepPoint>& out, std::vector<SweepPoint>& next) {
  bool changed = false;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (next[k].D_value < out[k].D_value) {
      out[k] = std::move(next[k]);
      changed = true;
    }
  }
  return changed;
}

}  // namespace

std::vector<SweepPoint> variational_sweep(const ModelFamily1D& family, const std::vector<double>& params,
                                          const SweepOptions& opts) {
  std::vector<SweepPoint> out(params.size());
  const long n = static_cast<long>(params.size());
  const int threads = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long k = 0; k < n; ++k) out[k] = sweep_point(family, params[k], opts, std::nullopt);
  for (std::size_t pass = 0; pass < params.size(); ++pass) {
    std::vector<SweepPoint> next(out.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (long k = 0; k < n; ++k) next[k] = neighbour_polish(family, out, static_cast<std::size_t>(k), opts);
    if (!adopt(out, next)) break;
  }
  return out;
}

std::vector<SweepPoint> variational_sweep_serial(const ModelFamily1D& family, const std::vector<double>& params,
                                                 const SweepOptions& opts) {
  std::vector<SweepPoint> out;
  for (double p : params) out.push_back(sweep_point(family, p, opts, std::nullopt));
  for (std::size_t pass = 0; pass < params.size(); ++pass) {
    std::vector<SweepPoint> next;
    for (std::size_t k = 0; k < out.size(); ++k) next.push_back(neighbour_polish(family, out, k, opts));
    if (!adopt(out, next)) break;
  }
  return out;
}

std::vector<double> find_jumps(const std::vector<SweepPoint>& branch, double threshold) {
  std::vector<double> out;
  for (std::size_t k = 0; k + 1 < branch.size(); ++k) {
    if (std::abs(branch[k + 1].n_r - branch[k].n_r) > threshold) {
      out.push_back(0.5 * (branch[k].parameter + branch[k + 1].parameter));
    }
  }
  return out;
}

HysteresisResult hysteresis_scan(const ModelFamily1D& family, const std::vector<double>& params,
                                 const SweepOptions& opts) {
  if (params.size() < 2) throw std::invalid_argument("hysteresis_scan: need at least two parameters");
  for (std::size_t k = 1; k < params.size(); ++k) {
    if (!(params[k] > params[k - 1])) throw std::invalid_argument("hysteresis_scan: parameters must increase");
  }
  HysteresisResult out;
  std::optional<VariationalAnsatz> warm;
  for (double p : params) {
    out.up.push_back(sweep_point(family, p, opts, warm));
    warm = out.up.back().ansatz;
  }
  for (auto it = params.rbegin(); it != params.rend(); ++it) {
    out.down.push_back(sweep_point(family, *it, opts, warm));
    warm = out.down.back().ansatz;
  }
  out.up_jumps = find_jumps(out.up, opts.jump_threshold);
  out.down_jumps = find_jumps(out.down, opts.jump_threshold);
  double spacing = 0.0;
  for (std::size_t k = 1; k < params.size(); ++k) spacing = std::max(spacing, params[k] - params[k - 1]);
  out.coincident = out.up_jumps.size() == 1 && out.down_jumps.size() == 1 &&
                   std::abs(out.up_jumps[0] - out.down_jumps[0]) <= spacing + 1e-12;
  return out;
}

}  // namespace oqs
