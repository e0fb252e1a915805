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

#include "oqs/models/models.hpp"

#include <cmath>
#include <stdexcept>

#include "oqs/core/operators.hpp"

namespace oqs {

LindbladModel::LindbladModel(std::string name, HilbertSpace space, LatticeGraph lattice,
                             std::vector<LocalTerm> local_terms, std::vector<BondTerm> bond_terms,
                             std::vector<LocalJump> jumps, Params params)
    : name_(std::move(name)),
      space_(std::move(space)),
      lattice_(std::move(lattice)),
      local_terms_(std::move(local_terms)),
      bond_terms_(std::move(bond_terms)),
      local_jumps_(std::move(jumps)),
      params_(std::move(params)),
      structured_(true) {
  if (lattice_.n_sites() != space_.n_sites()) throw std::invalid_argument("LindbladModel: lattice/space site mismatch");
  auto check_site = [&](std::size_t site, const SparseOp& op) {
    if (site >= space_.n_sites()) throw std::invalid_argument("LindbladModel: term site out of range");
    if (op.rows() != space_.site_dim(site) || op.cols() != space_.site_dim(site)) {
      throw DimensionError("LindbladModel: term operator does not match its site dimension");
    }
  };
  for (const auto& t : local_terms_) {
    check_site(t.site, t.op);
    if (!t.op.is_hermitian()) throw std::invalid_argument("LindbladModel: local term is not Hermitian");
  }
  for (const auto& b : bond_terms_) {
    if (b.site_a == b.site_b) throw std::invalid_argument("LindbladModel: bond term on a single site");
    check_site(b.site_a, b.op_a);
    check_site(b.site_b, b.op_b);
  }
  for (const auto& j : local_jumps_) check_site(j.site, j.op);
  if (dim() <= kMaxAssembledDim) assemble();
}

LindbladModel LindbladModel::from_operators(std::string name, HilbertSpace space, SparseOp hamiltonian,
                                            std::vector<SparseOp> jumps, Params params) {
  const Index d = space.total_dim();
  if (hamiltonian.rows() != d || hamiltonian.cols() != d) throw DimensionError("LindbladModel: Hamiltonian dimension");
  if (hamiltonian.hermiticity_defect() > 1e-12) throw std::invalid_argument("LindbladModel: Hamiltonian not Hermitian");
  for (const auto& j : jumps) {
    if (j.rows() != d || j.cols() != d) throw DimensionError("LindbladModel: jump operator dimension");
  }
  LindbladModel m;
  m.name_ = std::move(name);
  m.lattice_ = LatticeGraph(space.n_sites(), {});
  m.space_ = std::move(space);
  m.params_ = std::move(params);
  m.assembled_ = std::make_shared<const Assembled>(Assembled{std::move(hamiltonian), std::move(jumps)});
  return m;
}

void LindbladModel::assemble() {
  const Index d = dim();
  Assembled a{SparseOp(d, d), {}};
  for (const auto& t : local_terms_) a.hamiltonian += embed(t.op, t.site, space_);
  for (const auto& b : bond_terms_) {
    a.hamiltonian += embed_pair(b.op_a, b.site_a, b.op_b, b.site_b, space_) * b.coeff;
  }
  if (a.hamiltonian.hermiticity_defect() > 1e-12) throw std::invalid_argument("LindbladModel: Hamiltonian not Hermitian");
  for (const auto& j : local_jumps_) a.jumps.push_back(embed(j.op, j.site, space_));
  assembled_ = std::make_shared<const Assembled>(std::move(a));
}

const SparseOp& LindbladModel::hamiltonian() const {
  if (!assembled_) throw std::length_error("LindbladModel: space too large to assemble full operators");
  return assembled_->hamiltonian;
}

const std::vector<SparseOp>& LindbladModel::jumps() const {
  if (!assembled_) throw std::length_error("LindbladModel: space too large to assemble full operators");
  return assembled_->jumps;
}

double LindbladModel::param(const std::string& key) const {
  auto it = params_.find(key);
  if (it == params_.end()) throw std::out_of_range("LindbladModel: no parameter '" + key + "'");
  return it->second;
}

LindbladModel build_dissipative_ising(const LatticeGraph& lattice, double h, double v, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("build_dissipative_ising: gamma must be >= 0");
  const std::size_t n = lattice.n_sites();
  const auto sx = pauli(Pauli::x);
  const auto sz = pauli(Pauli::z);
  const auto sm = pauli(Pauli::minus);
  std::vector<LocalTerm> local;
  std::vector<BondTerm> bonds;
  std::vector<LocalJump> jumps;
  for (std::size_t i = 0; i < n; ++i) {
    local.push_back({i, sx * cplx(h / 2.0)});
    jumps.push_back({i, sm * cplx(std::sqrt(gamma))});
  }
  for (const auto& e : lattice.edges()) bonds.push_back({e.a, sz, e.b, sz, v / 4.0});
  return LindbladModel("dissipative_ising", HilbertSpace::uniform(n, 2), lattice, std::move(local), std::move(bonds),
                       std::move(jumps), {{"h", h}, {"V", v}, {"gamma", gamma}});
}

LindbladModel build_driven_bose_hubbard(const LatticeGraph& lattice, double j, double u, double delta_omega, double f,
                                        double gamma, std::size_t n_max) {
  if (n_max < 1) throw std::invalid_argument("build_driven_bose_hubbard: n_max must be >= 1");
  if (!(gamma >= 0.0)) throw std::invalid_argument("build_driven_bose_hubbard: gamma must be >= 0");
  const std::size_t n = lattice.n_sites();
  const auto b = boson_ops(n_max);
  const SparseOp onsite = (b.number * b.number) * cplx(u / 2.0) - b.number * cplx(delta_omega) +
                          (b.annihilate + b.create) * cplx(f);
  std::vector<LocalTerm> local;
  std::vector<BondTerm> bonds;
  std::vector<LocalJump> jumps;
  for (std::size_t i = 0; i < n; ++i) {
    local.push_back({i, onsite});
    jumps.push_back({i, b.annihilate * cplx(std::sqrt(gamma))});
  }
  for (const auto& e : lattice.edges()) {
    bonds.push_back({e.a, b.create, e.b, b.annihilate, -j});
    bonds.push_back({e.a, b.annihilate, e.b, b.create, -j});
  }
  return LindbladModel("driven_bose_hubbard", HilbertSpace::uniform(n, n_max + 1), lattice, std::move(local),
                       std::move(bonds), std::move(jumps),
                       {{"J", j}, {"U", u}, {"delta_omega", delta_omega}, {"F", f}, {"gamma", gamma},
                        {"n_max", static_cast<double>(n_max)}});
}

LindbladModel build_dissipative_heisenberg(const LatticeGraph& lattice, double jx, double jy, double jz, double gamma) {
  if (!(gamma >= 0.0)) throw std::invalid_argument("build_dissipative_heisenberg: gamma must be >= 0");
  const std::size_t n = lattice.n_sites();
  const auto sx = pauli(Pauli::x);
  const auto sy = pauli(Pauli::y);
  const auto sz = pauli(Pauli::z);
  const auto sm = pauli(Pauli::minus);
  std::vector<BondTerm> bonds;
  std::vector<LocalJump> jumps;
  for (std::size_t i = 0; i < n; ++i) jumps.push_back({i, sm * cplx(std::sqrt(gamma))});
  for (const auto& e : lattice.edges()) {
    if (jx != 0.0) bonds.push_back({e.a, sx, e.b, sx, jx});
    if (jy != 0.0) bonds.push_back({e.a, sy, e.b, sy, jy});
    if (jz != 0.0) bonds.push_back({e.a, sz, e.b, sz, jz});
  }
  return LindbladModel("dissipative_heisenberg", HilbertSpace::uniform(n, 2), lattice, {}, std::move(bonds),
                       std::move(jumps), {{"Jx", jx}, {"Jy", jy}, {"Jz", jz}, {"gamma", gamma}});
}

}  // namespace oqs
