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

#include "oqs/cli/pipelines.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "oqs/analysis/fss.hpp"
#include "oqs/analysis/observables.hpp"
#include "oqs/liouvillian/integrate.hpp"
#include "oqs/liouvillian/steady_state.hpp"
#include "oqs/meanfield/meanfield.hpp"
#include "oqs/trajectories/ensemble.hpp"
#include "oqs/variational/variational.hpp"

namespace oqs::cli {

using nlohmann::json;

namespace {

std::vector<Observable> observables_for(const LindbladModel& model, const RunConfig& cfg) {
  std::vector<std::string> names = cfg.observables;
  if (names.empty()) {
    bool qubits = true;
    for (auto d : model.space().site_dims()) qubits = qubits && d == 2;
    names.push_back(qubits ? "up_spin_density" : "boson_density");
  }
  std::vector<Observable> out;
  for (const auto& n : names) {
    try {
      out.push_back(observable_operator(model, n));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("observables: ") + e.what());
    }
  }
  return out;
}

json table_json(const CsvTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows) {
    json row = json::object();
    for (std::size_t c = 0; c < t.header.size(); ++c) {
      const std::string& cell = r[c];
      double v = 0.0;
      bool numeric = true;
      try {
        v = parse_double(cell);
      } catch (const std::invalid_argument&) {
        numeric = false;
      }
      if (numeric) row[t.header[c]] = v;
      else row[t.header[c]] = cell;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

PipelineOutput finish(const std::string& command, CsvTable table, json meta) {
  meta["command"] = command;
  meta["rows"] = table_json(table);
  return {std::move(table), meta.dump(2)};
}

ProductState product_initial(const LindbladModel& model, const InitialStateSpec& spec) {
  ProductState s;
  const auto& space = model.space();
  if (spec.kind == "maximally_mixed") {
    for (std::size_t i = 0; i < space.n_sites(); ++i) s.sites.push_back(DensityMatrix::maximally_mixed(space.site_dim(i)));
    return s;
  }
  const Vector psi = build_initial_vector(model, spec);
  Index k = 0;
  psi.cwiseAbs().maxCoeff(&k);
  for (std::size_t i = 0; i < space.n_sites(); ++i) {
    s.sites.push_back(DensityMatrix::basis_state(space.site_dim(i), static_cast<Index>(space.digit(k, i))));
  }
  return s;
}

PipelineOutput run_evolve(const RunConfig& cfg) {
  const LindbladModel model = build_model(cfg.model);
  const auto obs = observables_for(model, cfg);
  IntegrateConfig ic;
  ic.t_final = cfg.solver.t_final;
  ic.dt = cfg.solver.dt;
  ic.n_samples = cfg.solver.n_samples;
  ic.store_states = false;
  const auto rec = integrate(model, build_initial_state(model, cfg.initial_state), ic, obs);
  json meta;
  meta["dt"] = rec.dt;
  meta["invariants"] = {{"max_trace_defect", rec.invariants.max_trace_defect},
                        {"max_hermiticity_defect", rec.invariants.max_hermiticity_defect},
                        {"min_eigenvalue", rec.invariants.min_eigenvalue},
                        {"checks", rec.invariants.checks}};
  return finish("evolve", evolution_table(rec), meta);
}

PipelineOutput run_steady(const RunConfig& cfg) {
  const LindbladModel model = build_model(cfg.model);
  const auto obs = observables_for(model, cfg);
  const std::string method = cfg.solver.method.empty() ? "eigen" : cfg.solver.method;
  SteadyStateOptions so;
  so.residual_tol = std::max(cfg.solver.tol, so.residual_tol);
  SteadyStateResult r;
  if (method == "eigen") r = steady_state_eigen(model, so);
  else if (method == "ldagl") r = steady_state_ldagl(model, so);
  else if (method == "dense") r = steady_state_dense(model, so);
  else if (method == "evolve") {
    EvolveSteadyOptions eo;
    eo.tol = cfg.solver.tol;
    r = steady_state_evolve(model, build_initial_state(model, cfg.initial_state), eo);
  } else {
    throw ConfigError("solver.method: steady supports eigen, ldagl, dense, evolve; got '" + method + "'");
  }
  if (!r.state) throw ConvergenceError("steady: solver returned no state");
  CsvTable t;
  t.header = {"method", "residual", "unique"};
  std::vector<std::string> row{r.method, format_double(r.residual), r.unique ? "1" : "0"};
  for (const auto& o : obs) {
    t.header.push_back(o.name);
    row.push_back(format_double(expectation(o.op, r.rho().matrix()).real()));
  }
  t.rows.push_back(std::move(row));
  if (!r.unique) t.comments.push_back("degenerate steady manifold, dimension " + std::to_string(r.degenerate_basis.size()));
  json meta;
  meta["unique"] = r.unique;
  meta["iterations"] = r.iterations;
  return finish("steady", t, meta);
}

PipelineOutput run_traj(const RunConfig& cfg) {
  const LindbladModel model = build_model(cfg.model);
  const auto obs = observables_for(model, cfg);
  TrajectoryConfig tc;
  tc.trajectories = cfg.solver.trajectories;
  tc.dt = cfg.solver.dt;
  tc.t_final = cfg.solver.t_final;
  tc.n_samples = cfg.solver.n_samples;
  tc.master_seed = cfg.solver.seed;
  tc.jump_time_tol = cfg.solver.jump_time_tol;
  tc.unraveling = cfg.solver.unraveling == "qsd" ? Unraveling::qsd : Unraveling::jump;
  tc.threads = cfg.solver.threads;
  try {
    tc.validate();
    if (tc.trajectories < 2) throw std::invalid_argument("solver.trajectories must be >= 2");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const auto res = ensemble_average(model, build_initial_vector(model, cfg.initial_state), obs, tc);
  json meta;
  meta["master_seed"] = res.master_seed;
  meta["failed"] = res.failed;
  meta["total_jumps"] = res.total_jumps;
  return finish("traj", ensemble_table(res), meta);
}

MFOptions mf_options(const RunConfig& cfg) {
  MFOptions o;
  o.tol = cfg.solver.tol;
  o.max_iter = cfg.solver.max_iter;
  return o;
}

PipelineOutput run_meanfield(const RunConfig& cfg) {
  const LindbladModel model = build_model(cfg.model);
  const std::string method = cfg.solver.method.empty() ? "multistart" : cfg.solver.method;
  const MFOptions o = mf_options(cfg);
  CsvTable t;
  json meta;
  if (method == "multistart") {
    RngStream rng(cfg.solver.seed, 0);
    const auto ms = mf_multistart(model, cfg.solver.n_starts, rng, o);
    if (ms.solutions.empty()) throw ConvergenceError("meanfield: no start converged");
    t.header = {"solution", "density", "stable", "residual", "max_real", "truncation_weight"};
    for (std::size_t k = 0; k < ms.solutions.size(); ++k) {
      const auto& s = ms.solutions[k];
      double worst = -INFINITY;
      for (const auto& m : s.modes) worst = std::max(worst, m.max_real);
      t.rows.push_back({std::to_string(k), format_double(mean_density(s.state)), s.stable ? "1" : "0",
                        format_double(s.residual), format_double(worst), format_double(s.truncation_weight)});
    }
    t.comments.push_back("starts=" + std::to_string(ms.starts) + " non_converged=" + std::to_string(ms.non_converged));
    meta["non_converged"] = ms.non_converged;
  } else if (method == "steady") {
    const auto s = mf_steady(model, product_initial(model, cfg.initial_state), o);
    if (!s.converged) throw ConvergenceError("meanfield: fixed point did not converge (residual " + format_double(s.residual) + ")");
    t.header = {"site", "density"};
    for (std::size_t i = 0; i < s.state.n_sites(); ++i) {
      t.rows.push_back({std::to_string(i), format_double(site_density(s.state.sites[i].matrix()))});
    }
    meta["residual"] = s.residual;
  } else if (method == "cluster") {
    const auto c = cluster_mf_steady(model, {cfg.solver.cluster[0], cfg.solver.cluster[1]}, o);
    if (!c.converged) throw ConvergenceError("meanfield: cluster iteration did not converge");
    t.header = {"site", "density"};
    for (std::size_t i = 0; i < c.sites.n_sites(); ++i) {
      t.rows.push_back({std::to_string(i), format_double(site_density(c.sites.sites[i].matrix()))});
    }
    meta["residual"] = c.residual;
  } else {
    throw ConfigError("solver.method: meanfield supports multistart, steady, cluster; got '" + method + "'");
  }
  return finish("meanfield", t, meta);
}

ModelSpec with_param(ModelSpec spec, const std::string& name, double value) {
  if (!spec.params.count(name)) throw ConfigError("scan: model has no parameter '" + name + "'");
  spec.params[name] = value;
  return spec;
}

SweepOptions sweep_options(const RunConfig& cfg) {
  SweepOptions so;
  so.var.n_restarts = cfg.solver.n_restarts;
  so.var.seed = cfg.solver.seed;
  so.translation_invariant = cfg.solver.translation_invariant;
  so.jump_threshold = cfg.solver.jump_threshold;
  so.threads = cfg.solver.threads;
  return so;
}

PipelineOutput run_variational(const RunConfig& cfg) {
  const std::string method = cfg.solver.method.empty() ? "minimize" : cfg.solver.method;
  const SweepOptions so = sweep_options(cfg);
  json meta;
  if (method == "minimize") {
    const LindbladModel model = build_model(cfg.model);
    const auto init = VariationalAnsatz::from_state(product_initial(model, {"maximally_mixed", 0}), so.translation_invariant);
    const auto r = minimize_D(model, init, so.var);
    CsvTable t;
    t.header = {"n_r", "D_value", "restarts_used", "stagnated"};
    t.rows.push_back({format_double(mean_density(r.state)), format_double(r.D_value), std::to_string(r.restarts_used),
                      r.stagnated ? "1" : "0"});
    return finish("variational", t, meta);
  }
  if (!cfg.scan) throw ConfigError("variational: method '" + method + "' needs a scan.param1 block");
  const auto& axis = cfg.scan->param1;
  with_param(cfg.model, axis.name, 0.0);
  const ModelFamily1D family = [&](double v) { return build_model(with_param(cfg.model, axis.name, v)); };
  if (method == "sweep") {
    const auto pts = variational_sweep(family, axis.values, so);
    meta["jumps"] = find_jumps(pts, so.jump_threshold);
    return finish("variational", sweep_table(pts, "sweep"), meta);
  }
  if (method == "hysteresis") {
    const auto h = hysteresis_scan(family, axis.values, so);
    CsvTable t = sweep_table(h.up, "up");
    const CsvTable d = sweep_table(h.down, "down");
    t.rows.insert(t.rows.end(), d.rows.begin(), d.rows.end());
    meta["up_jumps"] = h.up_jumps;
    meta["down_jumps"] = h.down_jumps;
    meta["coincident"] = h.coincident;
    return finish("variational", t, meta);
  }
  throw ConfigError("solver.method: variational supports minimize, sweep, hysteresis; got '" + method + "'");
}

PipelineOutput run_scan(const RunConfig& cfg) {
  if (!cfg.scan) throw ConfigError("scan: missing scan block");
  const SweepAxis a1 = cfg.scan->param1;
  const std::optional<SweepAxis> a2 = cfg.scan->param2;
  with_param(cfg.model, a1.name, 0.0);
  if (a2) with_param(cfg.model, a2->name, 0.0);
  const ModelFamily family = [&](double p1, double p2) {
    ModelSpec spec = with_param(cfg.model, a1.name, p1);
    if (a2) spec = with_param(spec, a2->name, p2);
    return build_model(spec);
  };
  ScanOptions so;
  so.n_starts = cfg.solver.n_starts;
  so.seed = cfg.solver.seed;
  so.mf = mf_options(cfg);
  so.threads = cfg.solver.threads;
  const auto pts = scan_stable_count(family, a1.values, a2 ? a2->values : std::vector<double>{0.0}, so);
  json meta;
  meta["param1"] = a1.name;
  meta["param2"] = a2 ? a2->name : "";
  return finish("scan", scan_table(pts), meta);
}

PipelineOutput run_fss(const RunConfig& cfg) {
  if (!cfg.fss) throw ConfigError("fss: missing fss block");
  ScalingDataset data;
  for (const auto& r : cfg.fss->records) data.records.push_back({r[0], r[1], r[2]});
  for (const auto& [lx, ly] : cfg.fss->lattices) {
    ModelSpec spec = cfg.model;
    spec.lattice.kind = "grid";
    spec.lattice.lx = lx;
    spec.lattice.ly = ly;
    const LindbladModel model = build_model(spec);
    const auto ss = steady_state_eigen(model);
    data.records.push_back({static_cast<double>(lx * ly), static_cast<double>(lx) / static_cast<double>(ly),
                            magnetization_susceptibility(ss.rho().matrix(), model.space())});
  }
  FitResult fit;
  try {
    fit = fss_fit(data, cfg.fss->alpha_min, cfg.fss->alpha_max, cfg.fss->grid);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("fss: ") + e.what());
  }
  CsvTable t;
  t.comments.push_back("alpha=" + format_double(fit.alpha));
  t.comments.push_back("normalized_cost=" + format_double(fit.collapse.normalized_cost));
  t.header = {"N", "lambda", "chi", "chi_tilde"};
  for (const auto& r : data.records) {
    t.rows.push_back({format_double(r.n_sites), format_double(r.lambda), format_double(r.chi),
                      format_double(r.chi / std::pow(r.n_sites, fit.alpha))});
  }
  json meta;
  meta["alpha"] = fit.alpha;
  meta["normalized_cost"] = fit.collapse.normalized_cost;
  return finish("fss", t, meta);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << text << '\n';
}

}  // namespace

std::vector<std::string> command_names() { return {"evolve", "steady", "traj", "meanfield", "variational", "scan", "fss"}; }

PipelineOutput run_pipeline(const std::string& command, const RunConfig& cfg) {
  if (command == "evolve") return run_evolve(cfg);
  if (command == "steady") return run_steady(cfg);
  if (command == "traj") return run_traj(cfg);
  if (command == "meanfield") return run_meanfield(cfg);
  if (command == "variational") return run_variational(cfg);
  if (command == "scan") return run_scan(cfg);
  if (command == "fss") return run_fss(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

int run_command(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::ifstream is(opts.config_path, std::ios::binary);
    if (!is) throw ConfigError("cannot read config '" + opts.config_path + "'");
    std::stringstream ss;
    ss << is.rdbuf();
    RunConfig cfg = parse_config(apply_overrides(ss.str(), opts.overrides));
    if (opts.seed) cfg.solver.seed = *opts.seed;
    if (opts.threads) {
      if (*opts.threads < 1) throw ConfigError("--threads must be >= 1");
      cfg.solver.threads = *opts.threads;
    }
    const PipelineOutput res = run_pipeline(opts.command, cfg);
    const std::string csv_path = opts.csv_out.empty() ? cfg.output.csv : opts.csv_out;
    const std::string json_path = opts.json_out.empty() ? cfg.output.json : opts.json_out;
    if (csv_path.empty() || csv_path == "-") write_csv(out, res.table);
    else write_csv_file(csv_path, res.table);
    if (!json_path.empty()) write_text(json_path, res.json);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ConvergenceError& e) {
    err << "not converged: " << e.what() << '\n';
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace oqs::cli
