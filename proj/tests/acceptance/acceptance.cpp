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


// Acceptance runner. With no arguments every criterion runs in order; with
// numeric arguments only the listed ones do. Prints one PASS/FAIL line each
// and exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "oqs/analysis/csv.hpp"
#include "oqs/analysis/fss.hpp"
#include "oqs/analysis/observables.hpp"
#include "oqs/cli/pipelines.hpp"
#include "oqs/liouvillian/integrate.hpp"
#include "oqs/liouvillian/liouvillian.hpp"
#include "oqs/liouvillian/steady_state.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/trajectories/ensemble.hpp"
#include "oqs/variational/variational.hpp"
#include "oqs_test_support.hpp"

using namespace oqs;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Ising h grid 3.0, 3.1, ..., 8.0 at V = 5, gamma = 1 on a 4x4 periodic lattice.
std::vector<double> ising_h_grid() {
  std::vector<double> h;
  for (int k = 30; k <= 80; ++k) h.push_back(k / 10.0);
  return h;
}

LindbladModel ising_grid(double h) {
  return build_dissipative_ising(LatticeGraph::grid(4, 4, Boundary::periodic), h, 5.0, 1.0);
}

LindbladModel decaying_qubit() { return build_dissipative_ising(LatticeGraph::chain(1), 0.0, 0.0, 1.0); }

Observable excited_population(const LindbladModel& m) { return observable_operator(m, "up_spin_density"); }

struct TrajectoryLog {
  double worst_norm_bracket = 0.0;  // max |<psi|psi> - r| / (r * tol)
  double worst_probability_sum = 0.0;
  double worst_qsd_defect = 0.0;
  long ensembles = 0;
  long jumps = 0;

  void add(const EnsembleResult& r, const TrajectoryConfig& cfg) {
    worst_norm_bracket = std::max(worst_norm_bracket, r.max_jump_norm_defect / cfg.jump_time_tol);
    worst_probability_sum = std::max(worst_probability_sum, r.max_probability_sum_defect);
    worst_qsd_defect = std::max(worst_qsd_defect, r.max_qsd_norm_defect);
    ++ensembles;
    jumps += static_cast<long>(r.total_jumps);
  }
};

struct DecayRun {
  EvolutionRecord direct;
  EnsembleResult jump, qsd;
};

struct PairCheck {
  // |mean - exact| <= 3 stderr at every sample time after t = 0.
  int within = 0;
  int total = 0;
  double worst_ratio = 0.0;
};

PairCheck compare(const EnsembleResult& e, const std::function<double(std::size_t)>& exact) {
  PairCheck c;
  for (std::size_t k = 1; k < e.times.size(); ++k) {
    const auto& est = e.estimates[k][0];
    const double diff = std::abs(est.mean - exact(k));
    ++c.total;
    c.within += diff <= 3.0 * est.std_error;
    c.worst_ratio = std::max(c.worst_ratio, est.std_error > 0 ? diff / est.std_error : 0.0);
  }
  return c;
}

class Context {
 public:
  InvariantLog integrations;
  TrajectoryLog trajectories;
  std::vector<std::string> integration_sources;

  EvolutionRecord record(const std::string& source, const LindbladModel& model, const DensityMatrix& rho0,
                         const IntegrateConfig& cfg, const std::vector<Observable>& obs = {}) {
    auto rec = integrate(model, rho0, cfg, obs);
    integrations.merge(rec.invariants);
    integration_sources.push_back(source);
    return rec;
  }

  EnsembleResult ensemble(const LindbladModel& model, const Vector& psi0, const std::vector<Observable>& obs,
                          const TrajectoryConfig& cfg) {
    auto r = ensemble_average(model, psi0, obs, cfg);
    trajectories.add(r, cfg);
    return r;
  }

  const DecayRun& decay() {
    if (decay_) return *decay_;
    const auto q = decaying_qubit();
    DecayRun run;
    IntegrateConfig ic;
    ic.t_final = 2.0;
    ic.dt = 1e-3;
    ic.n_samples = 10;
    run.direct = record("decaying qubit", q, DensityMatrix::basis_state(2, 0), ic, {excited_population(q)});

    TrajectoryConfig tc;
    tc.trajectories = 5000;
    tc.t_final = 2.0;
    tc.n_samples = 10;
    tc.dt = 1e-3;
    tc.master_seed = 101;
    run.jump = ensemble(q, Vector::Unit(2, 0), {excited_population(q)}, tc);
    tc.unraveling = Unraveling::qsd;
    tc.dt = 2.5e-4;
    tc.master_seed = 102;
    run.qsd = ensemble(q, Vector::Unit(2, 0), {excited_population(q)}, tc);
    decay_ = std::move(run);
    return *decay_;
  }

  const std::vector<ScanPoint>& ising_mf_scan() {
    if (!ising_scan_) {
      const ModelFamily family = [](double h, double) { return ising_grid(h); };
      ScanOptions so;
      so.n_starts = 12;
      so.seed = 7;
      ising_scan_ = scan_stable_count(family, ising_h_grid(), {0.0}, so);
    }
    return *ising_scan_;
  }

  // First and last h with two stable mean-field solutions.
  std::pair<double, double> mf_window() {
    double lo = NAN, hi = NAN;
    for (const auto& p : ising_mf_scan()) {
      if (p.stable_count >= 2) {
        if (std::isnan(lo)) lo = p.p1;
        hi = p.p1;
      }
    }
    return {lo, hi};
  }

 private:
  std::optional<DecayRun> decay_;
  std::optional<std::vector<ScanPoint>> ising_scan_;
};

// ---------------------------------------------------------------------------

Outcome criterion1(Context& ctx) {
  const auto& run = ctx.decay();
  double direct_err = 0.0;
  for (std::size_t k = 0; k < run.direct.times.size(); ++k)
    direct_err = std::max(direct_err, std::abs(run.direct.values[k][0] - std::exp(-run.direct.times[k])));
  const auto exact = [&](const EnsembleResult& e) {
    return [&e](std::size_t k) { return std::exp(-e.times[k]); };
  };
  const auto j = compare(run.jump, exact(run.jump));
  const auto q = compare(run.qsd, exact(run.qsd));
  Outcome o;
  o.pass = direct_err <= 1e-8 && j.within == 10 && j.total == 10 && q.within == 10 && q.total == 10;
  o.detail = "direct max error " + fmt("%.2e", direct_err) + "; jump M=5000 " + std::to_string(j.within) +
             "/10 within 3se (worst " + fmt("%.2f", j.worst_ratio) + " se); qsd M=5000 dt=2.5e-4 " +
             std::to_string(q.within) + "/10 (worst " + fmt("%.2f", q.worst_ratio) + " se)";
  return o;
}

Outcome criterion2(Context&) {
  testing::Gen g(2024);
  double worst = 0.0;
  int pairs = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int family = trial % 3;
    const std::size_t sites = 1 + (trial / 3) % 3;
    const auto model = testing::random_model(family, sites, g, trial % 2 ? Boundary::periodic : Boundary::open);
    const auto l = build_superoperator(model);
    const DenseMatrix rho = testing::random_density(model.dim(), g);
    const DenseMatrix a = devectorize(l.matrix * vectorize(rho));
    worst = std::max(worst, testing::max_abs(a - lindblad_rhs(model, rho)));
    ++pairs;
  }
  return {worst <= 1e-12, std::to_string(pairs) + " random (model, rho) pairs, 1-3 sites, 3 families; max deviation " +
                              fmt("%.2e", worst)};
}

Outcome criterion3(Context&) {
  struct Case {
    std::string name;
    LindbladModel model;
  };
  std::vector<Case> cases;
  cases.push_back({"ising2", build_dissipative_ising(LatticeGraph::chain(2), 1.0, 2.0, 1.0)});
  cases.push_back({"ising3", build_dissipative_ising(LatticeGraph::chain(3), 1.0, 2.0, 1.0)});
  cases.push_back({"bh2", build_driven_bose_hubbard(LatticeGraph::chain(2), 1.0, 2.0, 1.0, 1.0, 1.0, 3)});
  cases.push_back({"bh3", build_driven_bose_hubbard(LatticeGraph::chain(3), 1.0, 2.0, 1.0, 1.0, 1.0, 3)});
  SteadyStateOptions iterative;
  iterative.dense_max_superop_dim = 0;
  double worst = 0.0;
  std::string detail;
  for (const auto& c : cases) {
    const auto ev = steady_state_evolve(c.model, DensityMatrix::maximally_mixed(c.model.dim()));
    const auto eig = steady_state_eigen(c.model, iterative);
    const auto lg = steady_state_ldagl(c.model, iterative);
    const double d = std::max({trace_distance(ev.rho().matrix(), eig.rho().matrix()),
                               trace_distance(ev.rho().matrix(), lg.rho().matrix()),
                               trace_distance(eig.rho().matrix(), lg.rho().matrix())});
    worst = std::max(worst, d);
    detail += c.name + " " + fmt("%.1e", d) + "; ";
  }
  return {worst <= 1e-6, detail + "max pairwise trace distance " + fmt("%.2e", worst)};
}

Outcome criterion4(Context& ctx) {
  const auto model = build_dissipative_ising(LatticeGraph::chain(4), 1.0, 2.0, 1.0);
  const Observable mz = observable_operator(model, "magnetization_z");
  const std::vector<std::size_t> ms{100, 300, 1000, 3000, 10000};
  std::vector<double> lx, ly;
  std::string detail = "stderr(M) at t=1:";
  for (std::size_t m : ms) {
    TrajectoryConfig tc;
    tc.trajectories = m;
    tc.t_final = 1.0;
    tc.dt = 1e-2;
    tc.n_samples = 4;
    tc.master_seed = 404;
    const auto r = ctx.ensemble(model, Vector::Unit(16, 15), {mz}, tc);
    const double se = r.estimates.back()[0].std_error;
    lx.push_back(std::log(static_cast<double>(m)));
    ly.push_back(std::log(se));
    detail += " " + fmt("%.3e", se);
  }
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope >= -0.6 && slope <= -0.4, detail + "; log-log slope " + fmt("%.4f", slope)};
}

// Asymptotic Kolmogorov distribution with the Stephens small-sample correction.
double ks_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

Outcome criterion5(Context& ctx) {
  const auto q = decaying_qubit();
  TrajectoryConfig tc;
  tc.trajectories = 5000;
  tc.t_final = 25.0;
  tc.dt = 1e-2;
  tc.n_samples = 1;
  tc.master_seed = 505;
  const auto r = ctx.ensemble(q, Vector::Unit(2, 0), {excited_population(q)}, tc);
  std::vector<double> t;
  for (double x : r.first_jump_times)
    if (x >= 0.0) t.push_back(x);
  std::sort(t.begin(), t.end());
  const double n = static_cast<double>(t.size());
  double d = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const double cdf = 1.0 - std::exp(-t[k]);
    d = std::max({d, (k + 1) / n - cdf, cdf - k / n});
  }
  const double p = ks_p_value(d, t.size());
  return {t.size() == 5000 && p > 0.01, std::to_string(t.size()) + " waiting times; KS D = " + fmt("%.4f", d) +
                                            ", p = " + fmt("%.3f", p)};
}

std::string compress_counts(const std::vector<ScanPoint>& pts) {
  std::string s;
  int last = -100;
  for (const auto& p : pts) {
    if (p.stable_count != last) {
      if (!s.empty()) s += "->";
      s += std::to_string(p.stable_count);
      last = p.stable_count;
    }
  }
  return s;
}

Outcome criterion6(Context& ctx) {
  const auto& ising = ctx.ising_mf_scan();
  const std::string seq = compress_counts(ising);
  const auto [lo, hi] = ctx.mf_window();
  bool middle_unstable = true;
  for (const auto& p : ising)
    if (p.stable_count == 2) middle_unstable = middle_unstable && p.solution_count == 3;
  // Frozen regression values from this implementation's own scan.
  const bool ising_ok = seq == "1->2->1" && std::abs(lo - 4.4) < 1e-9 && std::abs(hi - 7.1) < 1e-9 && middle_unstable;

  const ModelFamily bh = [](double dw, double f) {
    return build_driven_bose_hubbard(LatticeGraph::grid(4, 4, Boundary::periodic), 1.0, 10.0, dw, f, 1.0, 5);
  };
  const std::vector<double> dws{0.0, 5.0, 10.0, 15.0, 20.0};
  const std::vector<double> fs{0.5, 1.0, 2.0, 3.0};
  ScanOptions so;
  so.n_starts = 12;
  so.seed = 8;
  const auto grid = scan_stable_count(bh, dws, fs, so);
  int multistable = 0;
  std::string map;
  for (std::size_t i = 0; i < dws.size(); ++i) {
    map += (i ? " | " : "");
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const auto& p = grid[i * fs.size() + j];
      multistable += p.stable_count >= 2;
      map += std::to_string(p.stable_count) + "/" + std::to_string(p.solution_count) + (j + 1 < fs.size() ? "," : "");
    }
  }

  // Pinned BH points re-checked with a larger Fock cutoff.
  auto pinned = [](double dw, double f, int n_max) {
    RngStream rng(9, 0);
    const auto m = build_driven_bose_hubbard(LatticeGraph::grid(4, 4, Boundary::periodic), 1.0, 10.0, dw, f, 1.0, n_max);
    return mf_multistart(m, 12, rng);
  };
  const auto multi = pinned(12.0, 2.5, 8);
  const auto coexist = pinned(7.0, 1.5, 8);
  auto stable_of = [](const MultistartResult& r) {
    return std::count_if(r.solutions.begin(), r.solutions.end(), [](const MFSolution& s) { return s.stable; });
  };
  double trunc = 0.0;
  for (const auto& s : multi.solutions) trunc = std::max(trunc, s.truncation_weight);
  for (const auto& s : coexist.solutions) trunc = std::max(trunc, s.truncation_weight);
  const bool bh_ok = multistable >= 1 && stable_of(multi) == 2 && multi.solutions.size() == 3 &&
                     stable_of(coexist) == 1 && coexist.solutions.size() >= 2 && trunc < 1e-6;

  Outcome o;
  o.pass = ising_ok && bh_ok;
  o.detail = "(a) Ising V=5 counts " + seq + ", bistable h in [" + fmt("%.1f", lo) + ", " + fmt("%.1f", hi) +
             "] (frozen [4.4, 7.1]); (b) BH U=10 stable/solutions over dw{0,5,10,15,20} x F{.5,1,2,3}: " + map +
             "; n_max=8 recheck: (12,2.5) " + std::to_string(stable_of(multi)) + " stable of " +
             std::to_string(multi.solutions.size()) + ", (7,1.5) " + std::to_string(stable_of(coexist)) + " stable of " +
             std::to_string(coexist.solutions.size()) + ", truncation " + fmt("%.1e", trunc);
  return o;
}

Outcome criterion7(Context& ctx) {
  const auto [lo, hi] = ctx.mf_window();
  const ModelFamily1D family = [](double h) { return ising_grid(h); };
  const auto hs = ising_h_grid();
  SweepOptions so;
  so.var.n_restarts = 8;
  so.var.seed = 3;
  const auto sweep = variational_sweep(family, hs, so);
  const auto jumps = find_jumps(sweep, so.jump_threshold);

  const auto h8 = hysteresis_scan(family, hs, so);
  SweepOptions doubled = so;
  doubled.var.n_restarts = 16;
  const auto h16 = hysteresis_scan(family, hs, doubled);

  double branch_gap = 0.0;
  for (std::size_t k = 0; k < hs.size(); ++k) {
    branch_gap = std::max(branch_gap, std::abs(h8.up[k].n_r - h8.down[hs.size() - 1 - k].n_r));
    branch_gap = std::max(branch_gap, std::abs(h8.up[k].n_r - sweep[k].n_r));
  }
  const double spacing = 0.1 + 1e-9;
  const bool one_jump = jumps.size() == 1;
  const bool inside = one_jump && jumps[0] > lo && jumps[0] < hi;
  const bool stable_under_doubling = h8.coincident && h16.coincident &&
                                     std::abs(h8.up_jumps[0] - h16.up_jumps[0]) <= spacing &&
                                     std::abs(h8.down_jumps[0] - h16.down_jumps[0]) <= spacing;
  Outcome o;
  o.pass = one_jump && inside && stable_under_doubling && branch_gap <= 1e-4;
  std::string js;
  for (double j : jumps) js += fmt(" %.2f", j);
  o.detail = "variational jumps at h =" + js + " (MF window [" + fmt("%.1f", lo) + ", " + fmt("%.1f", hi) +
             "]); hysteresis up/down jumps " + (h8.coincident ? fmt("%.2f", h8.up_jumps[0]) + "/" + fmt("%.2f", h8.down_jumps[0]) : "n/a") +
             " with 8 restarts, " + (h16.coincident ? fmt("%.2f", h16.up_jumps[0]) + "/" + fmt("%.2f", h16.down_jumps[0]) : "n/a") +
             " with 16; max branch gap " + fmt("%.1e", branch_gap);
  return o;
}

Outcome criterion8(Context&) {
  testing::Gen g(808);
  double worst = -1e300;
  int count = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t sites = trial < 500 ? 2 : 3;
    const auto model = testing::random_model(trial % 3, sites, g, trial % 4 < 2 ? Boundary::open : Boundary::periodic);
    const auto state = testing::random_product(model, g);
    const double excess = trace_norm(lindblad_rhs(model, state.full().matrix())) - bound_D(model, state);
    worst = std::max(worst, excess);
    ++count;
  }
  return {worst <= 1e-10, std::to_string(count) + " random product states (500 two-site, 500 three-site); max "
                                                  "trace_norm - D = " + fmt("%.3e", worst)};
}

Outcome criterion9(Context& ctx) {
  const auto model = build_dissipative_ising(LatticeGraph::chain(8), 1.0, 2.0, 1.0);
  const Observable mz = observable_operator(model, "magnetization_z");
  IntegrateConfig ic;
  ic.t_final = 2.0;
  ic.dt = 2e-3;
  ic.n_samples = 10;
  ic.store_states = false;
  const auto exact = ctx.record("8-site Ising chain", model, DensityMatrix::basis_state(256, 255), ic, {mz});
  TrajectoryConfig tc;
  tc.trajectories = 2000;
  tc.t_final = 2.0;
  tc.dt = 1e-2;
  tc.n_samples = 10;
  tc.master_seed = 909;
  const auto r = ctx.ensemble(model, Vector::Unit(256, 255), {mz}, tc);
  const auto c = compare(r, [&](std::size_t k) { return exact.values[k][0]; });
  return {c.within == c.total && c.total == 10,
          std::to_string(c.within) + "/" + std::to_string(c.total) + " sample times within 3se (worst " +
              fmt("%.2f", c.worst_ratio) + " se), " + std::to_string(r.total_jumps) + " jumps"};
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

Outcome criterion10(Context& ctx) {
  ctx.decay();
  {
    IntegrateConfig ic;
    ic.t_final = 5.0;
    ic.dt = 1e-3;
    ic.n_samples = 5;
    ic.store_states = false;
    for (std::size_t n : {2u, 3u}) {
      ctx.record("steady models", build_dissipative_ising(LatticeGraph::chain(n), 1.0, 2.0, 1.0),
                 DensityMatrix::basis_state(1 << n, 0), ic);
      const auto bh = build_driven_bose_hubbard(LatticeGraph::chain(n), 1.0, 2.0, 1.0, 1.0, 1.0, 3);
      ctx.record("steady models", bh, DensityMatrix::basis_state(bh.dim(), 0), ic);
    }
  }
  bool have_9 = false;
  for (const auto& s : ctx.integration_sources) have_9 = have_9 || s == "8-site Ising chain";
  if (!have_9) criterion9(ctx);

  const auto& inv = ctx.integrations;
  const auto& tl = ctx.trajectories;
  const bool invariants_ok = inv.max_trace_defect <= 1e-8 && inv.max_hermiticity_defect <= 1e-10 &&
                             inv.min_eigenvalue >= -1e-8 && tl.worst_norm_bracket <= 1.0 &&
                             tl.worst_probability_sum <= 1e-12 && tl.worst_qsd_defect <= 1e-2;

  // Determinism across worker counts through the command-line surface.
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("oqs_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "traj.json") << R"({
    "schema_version": 1,
    "model": {"name": "dissipative_ising", "params": {"h": 1.0, "V": 2.0, "gamma": 1.0}, "lattice": {"kind": "chain", "lx": 4}},
    "solver": {"dt": 1e-2, "t_final": 1.0, "n_samples": 5, "trajectories": 400, "seed": 77, "n_starts": 6, "n_restarts": 2},
    "observables": ["magnetization_z", "up_spin_density"],
    "scan": {"param1": {"name": "h", "values": [1.0, 5.0]}}
  })";
  int identical = 0, total = 0;
  const std::vector<std::pair<std::string, std::vector<std::string>>> runs{
      {"traj", {}},
      {"traj", {"solver.unraveling=qsd", "solver.dt=2.5e-4", "solver.trajectories=100"}},
      {"scan", {"model.lattice.boundary=periodic"}},
      {"meanfield", {"model.lattice.boundary=periodic"}},
      {"variational", {"solver.method=sweep", "model.lattice.boundary=periodic"}},
  };
  for (std::size_t k = 0; k < runs.size(); ++k) {
    std::string outputs[2];
    const int threads[2] = {1, 8};
    bool ok = true;
    for (int t = 0; t < 2; ++t) {
      cli::RunOptions o;
      o.command = runs[k].first;
      o.config_path = (dir / "traj.json").string();
      o.overrides = runs[k].second;
      o.threads = threads[t];
      o.csv_out = (dir / ("out" + std::to_string(t) + ".csv")).string();
      o.json_out = (dir / ("out" + std::to_string(t) + ".json")).string();
      std::ostringstream out, err;
      ok = ok && cli::run_command(o, out, err) == cli::kExitOk;
      outputs[t] = read_all(o.csv_out) + read_all(o.json_out);
    }
    ++total;
    identical += ok && !outputs[0].empty() && outputs[0] == outputs[1];
  }
  fs::remove_all(dir);

  Outcome o;
  o.pass = invariants_ok && identical == total;
  o.detail = std::to_string(ctx.integration_sources.size()) + " integrations, " + std::to_string(inv.checks) +
             " steps: max |tr-1| " + fmt("%.1e", inv.max_trace_defect) + ", max hermiticity " +
             fmt("%.1e", inv.max_hermiticity_defect) + ", min eigenvalue " + fmt("%.1e", inv.min_eigenvalue) + "; " +
             std::to_string(tl.ensembles) + " ensembles: norm bracket " + fmt("%.2f", tl.worst_norm_bracket) +
             " x tol, probability sum " + fmt("%.1e", tl.worst_probability_sum) + ", qsd step defect " +
             fmt("%.1e", tl.worst_qsd_defect) + "; --threads 1 vs 8 identical for " + std::to_string(identical) + "/" +
             std::to_string(total) + " pipelines";
  return o;
}

Outcome criterion11(Context&) {
  struct Plant {
    double alpha;
    std::vector<double> sizes;
  };
  const std::vector<Plant> plants{{0.7, {4, 9, 16, 25}}, {-0.35, {8, 16, 32}}, {1.8, {2, 3, 6}}, {0.0, {4, 16}}};
  testing::Gen g(1111);
  double worst = 0.0;
  std::string detail;
  for (const auto& p : plants) {
    ScalingDataset d;
    for (double n : p.sizes)
      for (int k = 0; k < 12; ++k) {
        const double lambda = 0.25 + 0.25 * k;
        const double g_lambda = std::exp(-0.5 * (lambda - 1.5) * (lambda - 1.5)) + 0.2;
        d.records.push_back({n, lambda, std::pow(n, p.alpha) * g_lambda * (1.0 + 1e-3 * testing::uniform(g, -1, 1))});
      }
    const auto fit = fss_fit(d);
    worst = std::max(worst, std::abs(fit.alpha - p.alpha));
    detail += fmt("%.2f", p.alpha) + "->" + fmt("%.4f", fit.alpha) + "; ";
  }
  return {worst <= 0.05, "planted -> fitted alpha: " + detail + "max error " + fmt("%.4f", worst)};
}

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  Outcome (*run)(Context&);
};

const Criterion kCriteria[] = {
    {1, "analytic decay", 30, criterion1},
    {2, "superoperator oracle", 10, criterion2},
    {3, "steady-state triple agreement", 60, criterion3},
    {4, "1/sqrt(M) law", 600, criterion4},
    {5, "jump-time statistics", 30, criterion5},
    {6, "mean-field bistability", 600, criterion6},
    {7, "variational vs mean-field structure", 600, criterion7},
    {8, "variational bound property", 60, criterion8},
    {9, "trajectory vs exact many-body", 600, criterion9},
    {10, "invariant suite and thread determinism", 900, criterion10},
    {11, "finite-size scaling self-test", 60, criterion11},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  Context ctx;
  int failures = 0;
  for (const auto& c : kCriteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool in_budget = secs <= c.budget_s;
    const bool pass = o.pass && in_budget;
    failures += !pass;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.title << "): " << o.detail << " ["
              << fmt("%.1f", secs) << " s of " << fmt("%.0f", c.budget_s) << " s budget"
              << (in_budget ? "" : ", over budget") << "]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
