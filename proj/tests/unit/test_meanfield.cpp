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


#include <algorithm>

#include "doctest.h"
#include "oqs/analysis/observables.hpp"
#include "oqs/liouvillian/liouvillian.hpp"
#include "oqs/liouvillian/steady_state.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/trajectories/rng.hpp"
#include "oqs_test_support.hpp"

using namespace oqs;
using oqs::testing::max_abs;

namespace {

LindbladModel ising_grid(double h, double v = 5.0, double gamma = 1.0) {
  return build_dissipative_ising(LatticeGraph::grid(4, 4, Boundary::periodic), h, v, gamma);
}

ProductState all_down(std::size_t n) { return ProductState::uniform(DensityMatrix::basis_state(2, 1), n); }

double max_rhs(const LindbladModel& m, const ProductState& s) {
  double out = 0.0;
  for (std::size_t i = 0; i < s.n_sites(); ++i) out = std::max(out, trace_norm(mf_rhs(m, s, i)));
  return out;
}

}  // namespace

TEST_CASE("mean-field rhs equals the partial trace of the exact rhs on product states") {
  testing::Gen g(21);
  for (int family = 0; family < 3; ++family) {
    for (std::size_t n : {2u, 3u}) {
      for (auto boundary : {Boundary::open, Boundary::periodic}) {
        const auto model = testing::random_model(family, n, g, boundary);
        const auto state = testing::random_product(model, g);
        const DenseMatrix full = lindblad_rhs(model, state.full().matrix());
        for (std::size_t i = 0; i < n; ++i) {
          const DenseMatrix reduced = partial_trace(full, model.space(), {i});
          CHECK(max_abs(mf_rhs(model, state, i) - reduced) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("maximally mixed neighbours switch off the Ising interaction") {
  testing::Gen g(22);
  const double h = 0.9, gamma = 0.7;
  const auto pair = build_dissipative_ising(LatticeGraph::chain(2), h, 3.0, gamma);
  const auto single = build_dissipative_ising(LatticeGraph::chain(1), h, 0.0, gamma);
  ProductState s;
  s.sites.emplace_back(testing::random_density(2, g));
  s.sites.push_back(DensityMatrix::maximally_mixed(2));
  CHECK(max_abs(mf_rhs(pair, s, 0) - lindblad_rhs(single, s.sites[0].matrix())) < 1e-14);
}

TEST_CASE("zero coupling reproduces exact single-site steady states") {
  const double h = 1.7, gamma = 0.8;
  const auto decoupled = build_dissipative_ising(LatticeGraph::grid(3, 3, Boundary::periodic), h, 0.0, gamma);
  const auto single = build_dissipative_ising(LatticeGraph::chain(1), h, 0.0, gamma);
  const DenseMatrix exact = steady_state_dense(single).rho().matrix();
  const auto sol = mf_steady(decoupled, all_down(9));
  REQUIRE(sol.converged);
  CHECK(sol.uniform);
  for (const auto& f : sol.state.sites) CHECK(max_abs(f.matrix() - exact) < 1e-10);

  const auto bh = build_driven_bose_hubbard(LatticeGraph::chain(3, Boundary::periodic), 0.0, 2.0, 1.0, 0.7, 1.0, 3);
  const auto bh1 = build_driven_bose_hubbard(LatticeGraph::chain(1), 0.0, 2.0, 1.0, 0.7, 1.0, 3);
  const auto bh_sol = mf_steady(bh, ProductState::uniform(DensityMatrix::basis_state(4, 0), 3));
  REQUIRE(bh_sol.converged);
  CHECK(max_abs(bh_sol.state.sites[1].matrix() - steady_state_dense(bh1).rho().matrix()) < 1e-10);
  CHECK(bh_sol.truncation_weight > 0.0);
  CHECK(bh_sol.truncation_weight < 1e-2);
}

TEST_CASE("fixed points satisfy the self-consistency tolerance and are stable at h=0") {
  const auto model = ising_grid(0.0);
  auto sol = mf_steady(model, ProductState::uniform(DensityMatrix::maximally_mixed(2), 16));
  REQUIRE(sol.converged);
  CHECK(max_rhs(model, sol.state) <= 1e-10);
  CHECK(mean_density(sol.state) < 1e-10);
  mf_stability(model, sol);
  CHECK(sol.stability_checked);
  CHECK(sol.stable);
  CHECK(std::abs(sol.zero_mode.real()) <= 1e-10);
  CHECK(sol.modes.size() == 4);
  for (const auto& mode : sol.modes) CHECK(mode.max_real <= -0.49);
}

TEST_CASE("zero coupling makes every stability mode identical") {
  auto sol = mf_steady(ising_grid(1.3, 0.0), all_down(16));
  REQUIRE(sol.converged);
  mf_stability(ising_grid(1.3, 0.0), sol);
  REQUIRE(sol.modes.size() == 4);
  for (const auto& mode : sol.modes) CHECK(mode.max_real == doctest::Approx(sol.modes[0].max_real).epsilon(1e-9));
  CHECK(sol.stable);
}

TEST_CASE("per-site and uniform modes agree on translation-invariant lattices") {
  const auto model = build_dissipative_ising(LatticeGraph::chain(4, Boundary::periodic), 1.0, 3.0, 1.0);
  MFOptions uniform_opts;
  uniform_opts.mode = MFMode::uniform;
  MFOptions per_site;
  per_site.mode = MFMode::per_site;
  const auto a = mf_steady(model, all_down(4), uniform_opts);
  const auto b = mf_steady(model, all_down(4), per_site);
  REQUIRE(a.converged);
  REQUIRE(b.converged);
  CHECK(a.state.distance(b.state) < 1e-8);

  MFOptions newton = uniform_opts;
  newton.solver = MFSolver::newton;
  const auto c = mf_steady(model, all_down(4), newton);
  REQUIRE(c.converged);
  CHECK(a.state.distance(c.state) < 1e-8);

  const auto open = build_dissipative_ising(LatticeGraph::chain(4), 1.0, 3.0, 1.0);
  CHECK_THROWS_AS(mf_steady(open, all_down(4), uniform_opts), std::invalid_argument);
}

TEST_CASE("multistart in the monostable and bistable regimes") {
  RngStream rng(3, 0);
  const auto mono = mf_multistart(ising_grid(0.5), 8, rng);
  CHECK(mono.solutions.size() == 1);
  CHECK(mono.solutions[0].stable);

  RngStream r1(4, 0), r2(4, 0);
  const auto bi = mf_multistart(ising_grid(5.0), 12, r1);
  const auto again = mf_multistart(ising_grid(5.0), 12, r2);
  REQUIRE(bi.solutions.size() == again.solutions.size());
  for (std::size_t k = 0; k < bi.solutions.size(); ++k)
    CHECK(bi.solutions[k].state.distance(again.solutions[k].state) == 0.0);

  REQUIRE(bi.solutions.size() == 3);
  const auto stable = std::count_if(bi.solutions.begin(), bi.solutions.end(), [](const MFSolution& s) { return s.stable; });
  CHECK(stable == 2);
  CHECK_FALSE(bi.solutions[1].stable);
  for (std::size_t k = 0; k < bi.solutions.size(); ++k)
    for (std::size_t l = k + 1; l < bi.solutions.size(); ++l)
      CHECK(bi.solutions[k].state.distance(bi.solutions[l].state) > 1e-4);
  for (const auto& s : bi.solutions) CHECK(max_rhs(ising_grid(5.0), s.state) <= 1e-10);
  CHECK(mean_density(bi.solutions[0].state) < mean_density(bi.solutions[2].state));
}

TEST_CASE("cluster mean field") {
  const auto ring = build_dissipative_ising(LatticeGraph::chain(4, Boundary::periodic), 1.5, 2.0, 1.0);
  SUBCASE("1x1 cluster is single-site mean field") {
    const auto c = cluster_mf_steady(ring, {1, 1});
    const auto s = mf_steady(ring, all_down(4));
    REQUIRE(c.converged);
    CHECK(c.sites.distance(s.state) < 1e-9);
  }
  SUBCASE("cluster covering the whole ring is exact") {
    const auto c = cluster_mf_steady(ring, {4, 1});
    REQUIRE(c.converged);
    const auto exact = steady_state_eigen(ring);
    CHECK(trace_distance(c.cluster_state.matrix(), exact.rho().matrix()) < 1e-8);
  }
  SUBCASE("2x1 and 1x1 agree far from the bistable window") {
    const auto grid = ising_grid(1.0);
    const auto one = cluster_mf_steady(grid, {1, 1});
    const auto two = cluster_mf_steady(grid, {2, 1});
    REQUIRE(one.converged);
    REQUIRE(two.converged);
    const double n1 = up_spin_density(one.sites), n2 = up_spin_density(two.sites);
    CHECK(std::abs(n1 - n2) <= 0.05 * std::max(n1, n2));
  }
  SUBCASE("preconditions") {
    const auto bh = build_driven_bose_hubbard(LatticeGraph::grid(3, 3, Boundary::periodic), 1, 1, 1, 1, 1, 2);
    CHECK_THROWS_AS(cluster_mf_steady(bh, {3, 3}), std::invalid_argument);
    CHECK_THROWS_AS(cluster_mf_steady(ring, {3, 1}), std::invalid_argument);
    const auto open = build_dissipative_ising(LatticeGraph::chain(4), 1.5, 2.0, 1.0);
    CHECK_THROWS_AS(cluster_mf_steady(open, {2, 1}), std::invalid_argument);
  }
}

TEST_CASE("stable-count scans") {
  const ModelFamily family = [](double h, double v) { return ising_grid(h, v); };
  const std::vector<double> hs{1.0, 5.0, 8.0};
  ScanOptions opts;
  opts.n_starts = 8;
  const auto par = scan_stable_count(family, hs, {5.0}, opts);
  const auto ser = scan_stable_count_serial(family, hs, {5.0}, opts);
  REQUIRE(par.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(par[k].stable_count == ser[k].stable_count);
    CHECK(par[k].densities == ser[k].densities);
  }
  CHECK(par[0].stable_count == 1);
  CHECK(par[1].stable_count == 2);
  CHECK(par[1].solution_count == 3);
  CHECK(par[2].stable_count == 1);

  const ModelFamily broken = [](double p, double) -> LindbladModel {
    if (p > 0.5) throw std::invalid_argument("no model here");
    return ising_grid(0.0);
  };
  const auto failed = scan_stable_count(broken, {0.0, 1.0}, {0.0}, opts);
  CHECK(failed[0].stable_count == 1);
  CHECK(failed[1].stable_count == -1);
  CHECK(failed[1].error.find("no model here") != std::string::npos);

  ScanOptions starved = opts;
  starved.mf.tol = 1e-300;
  starved.mf.max_iter = 2;
  const auto none = scan_stable_count(family, {5.0}, {5.0}, starved);
  CHECK(none[0].stable_count == -1);
  CHECK(none[0].solution_count == 0);
  CHECK(none[0].error.find("no start converged") != std::string::npos);
  CHECK_THROWS_AS(scan_stable_count(family, {}, {1.0}, opts), std::invalid_argument);
}

TEST_CASE("mean field needs local structure") {
  const auto m = LindbladModel::from_operators("opaque", HilbertSpace::uniform(1, 2), pauli(Pauli::x),
                                               {pauli(Pauli::minus)});
  CHECK_THROWS_AS(mf_steady(m, all_down(1)), std::invalid_argument);
  CHECK_THROWS_AS(mf_steady(ising_grid(1.0), all_down(3)), DimensionError);
}
