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

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oqs/liouvillian/density_matrix.hpp"
#include "oqs/models/models.hpp"
#include "oqs/trajectories/rng.hpp"

namespace oqs {

/// rho = rho_0 (x) rho_1 (x) ... with one factor per lattice site.
struct ProductState {
  std::vector<DensityMatrix> sites;

  static ProductState uniform(const DensityMatrix& factor, std::size_t n_sites);
  std::size_t n_sites() const { return sites.size(); }
  DensityMatrix full() const { return DensityMatrix::product(sites); }
  /// Largest per-site trace distance.
  double distance(const ProductState& other) const;
};

/// Up-spin population rho(0,0) on a qubit, mean occupation sum_n n rho(n,n) otherwise.
double site_density(const DenseMatrix& rho);
/// site_density averaged over sites.
double mean_density(const ProductState& state);

enum class MFMode {
  /// Single-site reduction on translation-invariant lattices, per-site otherwise.
  automatic,
  uniform,
  per_site
};

enum class MFSolver { fixed_point, newton };

struct MFOptions {
  double tol = 1e-10;
  int max_iter = 20000;
  double damping = 0.5;
  MFMode mode = MFMode::automatic;
  MFSolver solver = MFSolver::fixed_point;
};

struct StabilityMode {
  /// "k=(0,0)", "k=(pi,0)", ... for uniform solutions, "lattice" for the
  /// full per-site linearization.
  std::string label;
  std::pair<double, double> k{0.0, 0.0};
  double max_real = 0.0;
  std::vector<cplx> spectrum;
};

struct MFSolution {
  ProductState state;
  double residual = 0.0;
  bool converged = false;
  bool uniform = false;
  bool stable = false;
  bool stability_checked = false;
  /// Eigenvalues of the linearized map, all modes concatenated; includes the zero mode.
  std::vector<cplx> stability_spectrum;
  std::vector<StabilityMode> modes;
  /// Eigenvalue of smallest magnitude, the trace-preserving zero mode.
  cplx zero_mode = 0.0;
  int iterations = 0;
  /// Largest population of the highest Fock level over sites (bosons), else 0.
  double truncation_weight = 0.0;
};

/// d rho_site / dt of the mean-field master equation: local terms, local
/// jumps and every bond touching the site with the partner operator replaced
/// by its expectation in the partner's factor.
DenseMatrix mf_rhs(const LindbladModel& model, const ProductState& state, std::size_t site);

/// Single-site mean-field Hamiltonian and jumps for `site` in `state`.
std::pair<DenseMatrix, std::vector<DenseMatrix>> mf_local_generator(const LindbladModel& model,
                                                                    const ProductState& state, std::size_t site);

/// Unique steady state of a single-site generator, by a bordered direct solve
/// of L# x = 0 with tr x = 1.
DenseMatrix local_steady_state(const DenseMatrix& h, const std::vector<DenseMatrix>& jumps);

/// Self-consistent mean-field steady state from `init`.
MFSolution mf_steady(const LindbladModel& model, const ProductState& init, const MFOptions& opts = {});

struct MultistartResult {
  std::vector<MFSolution> solutions;
  int starts = 0;
  int non_converged = 0;
};

/// Local basis states, the maximally mixed state and then `n_starts` random
/// Bloch/Fock starts. Each start runs Newton in the space of mean fields, so
/// unstable branches are found, and the damped fixed-point iteration; results
/// are deduplicated at trace distance 1e-4.
/// Solutions carry their stability verdict and are sorted by mean density.
MultistartResult mf_multistart(const LindbladModel& model, int n_starts, RngStream& rng, const MFOptions& opts = {});

/// Linearization around a converged solution, for uniform (k = 0) and
/// staggered (k = pi) perturbations along each lattice axis. Stable iff no
/// eigenvalue outside the trace-preserving zero mode has real part > 1e-10.
void mf_stability(const LindbladModel& model, MFSolution& solution);

struct ClusterSolution {
  std::pair<std::size_t, std::size_t> cluster_dims;
  DensityMatrix cluster_state;
  /// Single-site reductions, one per lattice site, tiled by the cluster.
  ProductState sites;
  double residual = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Largest cluster Hilbert-space dimension accepted by cluster_mf_steady.
inline constexpr Index kClusterMaxDim = 256;

/// Exact treatment inside an Lx' x Ly' tile of a shaped lattice; bonds
/// leaving the tile see the expectation at the tile site with the same local
/// coordinate. `init` seeds every tile site (maximally mixed if absent).
ClusterSolution cluster_mf_steady(const LindbladModel& model, std::pair<std::size_t, std::size_t> cluster_dims,
                                  const MFOptions& opts = {}, const std::optional<DensityMatrix>& init = {});

using ModelFamily = std::function<LindbladModel(double p1, double p2)>;

struct ScanOptions {
  int n_starts = 12;
  std::uint64_t seed = 1;
  MFOptions mf{};
  int threads = 0;
};

struct ScanPoint {
  double p1 = 0.0;
  double p2 = 0.0;
  /// -1 when the point failed or no start converged.
  int stable_count = 0;
  int solution_count = 0;
  std::vector<double> densities;
  std::vector<bool> stable;
  std::string error;
};

/// mf_multistart + mf_stability on every (p1, p2) grid point, parallel over
/// points. Point index i = i1 * |p2| + i2 uses RngStream(seed, i).
std::vector<ScanPoint> scan_stable_count(const ModelFamily& family, const std::vector<double>& p1,
                                         const std::vector<double>& p2, const ScanOptions& opts = {});
std::vector<ScanPoint> scan_stable_count_serial(const ModelFamily& family, const std::vector<double>& p1,
                                                const std::vector<double>& p2, const ScanOptions& opts = {});

}  // namespace oqs
