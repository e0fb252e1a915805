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


#include "doctest.h"
#include "oqs/liouvillian/integrate.hpp"
#include "oqs/models/models.hpp"
#include "oqs_test_support.hpp"

using namespace oqs;
using oqs::testing::dense_site_op;
using oqs::testing::max_abs;

namespace {

DenseMatrix d(const SparseOp& op) { return op.to_dense(); }

}  // namespace

TEST_CASE("dissipative Ising on a 2x2 periodic grid matches the dense oracle") {
  const auto lat = LatticeGraph::grid(2, 2, Boundary::periodic);
  const double h = 0.7, v = 1.9, gamma = 0.3;
  const auto model = build_dissipative_ising(lat, h, v, gamma);
  const std::vector<Index> dims(4, 2);
  const DenseMatrix sx = d(pauli(Pauli::x)), sz = d(pauli(Pauli::z)), sm = d(pauli(Pauli::minus));

  DenseMatrix oracle = DenseMatrix::Zero(16, 16);
  for (std::size_t i = 0; i < 4; ++i) oracle += 0.5 * h * dense_site_op(sx, i, dims);
  for (const auto& e : lat.edges())
    oracle += 0.25 * v * dense_site_op(sz, e.a, dims) * dense_site_op(sz, e.b, dims);
  CHECK(max_abs(d(model.hamiltonian()) - oracle) < 1e-13);

  REQUIRE(model.jumps().size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(max_abs(d(model.jumps()[i]) - std::sqrt(gamma) * dense_site_op(sm, i, dims)) < 1e-14);
  CHECK(model.param("V") == v);
  CHECK_THROWS_AS(model.param("U"), std::out_of_range);
  CHECK_THROWS_AS(build_dissipative_ising(lat, h, v, -1.0), std::invalid_argument);
}

TEST_CASE("driven Bose-Hubbard") {
  SUBCASE("hopping only is Hermitian") {
    const auto m = build_driven_bose_hubbard(LatticeGraph::chain(3), 1.3, 0.0, 0.0, 0.0, 1.0, 3);
    CHECK(m.hamiltonian().is_hermitian(1e-14));
    const auto b = boson_ops(3);
    const std::vector<Index> dims(3, 4);
    DenseMatrix hop = DenseMatrix::Zero(64, 64);
    for (std::size_t i = 0; i + 1 < 3; ++i) {
      const DenseMatrix ab = dense_site_op(d(b.create), i, dims) * dense_site_op(d(b.annihilate), i + 1, dims);
      hop -= 1.3 * (ab + ab.adjoint());
    }
    CHECK(max_abs(d(m.hamiltonian()) - hop) < 1e-13);
  }
  SUBCASE("2-site n_max=2 against the dense oracle") {
    const double j = 0.4, u = 2.5, dw = -0.8, f = 0.6, gamma = 0.9;
    const auto m = build_driven_bose_hubbard(LatticeGraph::chain(2), j, u, dw, f, gamma, 2);
    const auto b = boson_ops(2);
    const DenseMatrix a = d(b.annihilate), n = d(b.number);
    const std::vector<Index> dims{3, 3};
    DenseMatrix oracle = DenseMatrix::Zero(9, 9);
    for (std::size_t i = 0; i < 2; ++i) {
      const DenseMatrix local = 0.5 * u * n * n - dw * n + f * (a + a.adjoint());
      oracle += dense_site_op(local, i, dims);
    }
    const DenseMatrix a0 = dense_site_op(a, 0, dims), a1 = dense_site_op(a, 1, dims);
    oracle -= j * (a0.adjoint() * a1 + a1.adjoint() * a0);
    CHECK(max_abs(d(m.hamiltonian()) - oracle) < 1e-13);
    REQUIRE(m.jumps().size() == 2);
    CHECK(max_abs(d(m.jumps()[1]) - std::sqrt(gamma) * a1) < 1e-14);
    CHECK(m.space().site_dim(0) == 3);
  }
  CHECK_THROWS_AS(build_driven_bose_hubbard(LatticeGraph::chain(2), 1, 1, 1, 1, 1, 0), std::invalid_argument);
}

TEST_CASE("dissipative Heisenberg") {
  const auto zero = build_dissipative_heisenberg(LatticeGraph::chain(2), 0, 0, 0, 1.0);
  CHECK(zero.hamiltonian().nnz() == 0);
  CHECK(zero.jumps().size() == 2);

  const auto zz = build_dissipative_heisenberg(LatticeGraph::chain(2), 0, 0, 1.0, 1.0);
  const DenseMatrix sz = d(pauli(Pauli::z));
  CHECK(max_abs(d(zz.hamiltonian()) - kron(sz, sz)) < 1e-15);

  const double jx = 0.3, jy = -0.7, jz = 1.1;
  const auto m = build_dissipative_heisenberg(LatticeGraph::chain(3), jx, jy, jz, 0.5);
  const std::vector<Index> dims(3, 2);
  const DenseMatrix sx = d(pauli(Pauli::x)), sy = d(pauli(Pauli::y));
  DenseMatrix oracle = DenseMatrix::Zero(8, 8);
  for (std::size_t i = 0; i + 1 < 3; ++i) {
    oracle += jx * dense_site_op(sx, i, dims) * dense_site_op(sx, i + 1, dims);
    oracle += jy * dense_site_op(sy, i, dims) * dense_site_op(sy, i + 1, dims);
    oracle += jz * dense_site_op(sz, i, dims) * dense_site_op(sz, i + 1, dims);
  }
  CHECK(max_abs(d(m.hamiltonian()) - oracle) < 1e-13);
}

TEST_CASE("builders share invariants") {
  testing::Gen g(3);
  for (int family = 0; family < 3; ++family) {
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto m = testing::random_model(family, n, g, Boundary::periodic);
      CHECK(m.hamiltonian().is_hermitian(1e-12));
      CHECK(m.jumps().size() == n);
      CHECK(m.has_local_structure());
    }
  }
}

TEST_CASE("Ising without dissipation evolves unitarily") {
  const auto m = build_dissipative_ising(LatticeGraph::chain(3), 1.1, 2.0, 0.0);
  testing::Gen g(5);
  const DensityMatrix rho0(testing::random_density(8, g));
  IntegrateConfig cfg;
  cfg.t_final = 0.5;
  cfg.dt = 1e-3;
  cfg.n_samples = 5;
  const auto rec = integrate(m, rho0, cfg);
  for (const auto& s : rec.states) CHECK(std::abs(s.purity() - rho0.purity()) < 1e-10);
}

TEST_CASE("models from full operators") {
  const HilbertSpace space = HilbertSpace::uniform(1, 2);
  const auto m = LindbladModel::from_operators("qubit", space, pauli(Pauli::x), {pauli(Pauli::minus)});
  CHECK_FALSE(m.has_local_structure());
  CHECK(m.dim() == 2);
  const SparseOp not_hermitian = pauli(Pauli::plus);
  CHECK_THROWS_AS(LindbladModel::from_operators("bad", space, not_hermitian, {}), std::invalid_argument);
  CHECK_THROWS_AS(LindbladModel::from_operators("bad", space, SparseOp::identity(3), {}), DimensionError);
}
