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

#include "oqs/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "json.hpp"

namespace oqs::cli {

using nlohmann::json;

namespace {

/// Reads the keys of one JSON object and rejects whatever was not read.
class Fields {
 public:
  Fields(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  template <class T>
  void optional(const std::string& key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    read(j_.at(key), out, where_ + "." + key);
  }

  template <class T>
  void required(const std::string& key, T& out) {
    if (!j_.contains(key)) throw ConfigError(where_ + ": missing required key '" + key + "'");
    optional(key, out);
  }

  const json& sub(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items()) {
      if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
    }
  }

  static void read(const json& v, double& out, const std::string& w) {
    if (!v.is_number()) throw ConfigError(w + ": expected a number");
    out = v.get<double>();
  }
  static void read(const json& v, int& out, const std::string& w) {
    if (!v.is_number_integer()) throw ConfigError(w + ": expected an integer");
    out = v.get<int>();
  }
  static void read(const json& v, std::int64_t& out, const std::string& w) {
    if (!v.is_number_integer()) throw ConfigError(w + ": expected an integer");
    out = v.get<std::int64_t>();
  }
  static void read(const json& v, std::size_t& out, const std::string& w) {
    if (!v.is_number_unsigned()) throw ConfigError(w + ": expected a non-negative integer");
    out = v.get<std::size_t>();
  }
  static void read(const json& v, bool& out, const std::string& w) {
    if (!v.is_boolean()) throw ConfigError(w + ": expected a boolean");
    out = v.get<bool>();
  }
  static void read(const json& v, std::string& out, const std::string& w) {
    if (!v.is_string()) throw ConfigError(w + ": expected a string");
    out = v.get<std::string>();
  }
  template <class T>
  static void read(const json& v, std::vector<T>& out, const std::string& w) {
    if (!v.is_array()) throw ConfigError(w + ": expected an array");
    out.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      T x{};
      read(v[i], x, w + "[" + std::to_string(i) + "]");
      out.push_back(std::move(x));
    }
  }
  template <class T, std::size_t N>
  static void read(const json& v, std::array<T, N>& out, const std::string& w) {
    if (!v.is_array() || v.size() != N) throw ConfigError(w + ": expected an array of " + std::to_string(N));
    for (std::size_t i = 0; i < N; ++i) read(v[i], out[i], w + "[" + std::to_string(i) + "]");
  }
  static void read(const json& v, std::map<std::string, double>& out, const std::string& w) {
    if (!v.is_object()) throw ConfigError(w + ": expected an object of numbers");
    out.clear();
    for (const auto& [k, x] : v.items()) read(x, out[k], w + "." + k);
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

static_assert(std::is_same_v<std::size_t, std::uint64_t>, "seeds are read through the size_t overload");

SweepAxis parse_axis(const json& j, const std::string& where) {
  Fields f(j, where);
  SweepAxis a;
  f.required("name", a.name);
  if (f.has("values")) {
    f.optional("values", a.values);
  } else {
    double start = 0.0, stop = 0.0;
    std::size_t count = 0;
    f.required("start", start);
    f.required("stop", stop);
    f.required("count", count);
    if (count < 1) throw ConfigError(where + ": count must be >= 1");
    for (std::size_t k = 0; k < count; ++k) {
      a.values.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1));
    }
  }
  f.finish();
  if (a.values.empty()) throw ConfigError(where + ": no values");
  return a;
}

json axis_json(const SweepAxis& a) { return {{"name", a.name}, {"values", a.values}}; }

void check_choice(const std::string& value, const std::set<std::string>& allowed, const std::string& where) {
  if (!allowed.count(value)) throw ConfigError(where + ": unsupported value '" + value + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  Fields top(root, "config");
  top.required("schema_version", c.schema_version);
  if (c.schema_version != kSchemaVersion) {
    throw ConfigError("config: unsupported schema_version " + std::to_string(c.schema_version));
  }
  if (!root.contains("model")) throw ConfigError("config: missing required key 'model'");
  {
    Fields m(top.sub("model"), "model");
    m.required("name", c.model.name);
    m.optional("params", c.model.params);
    if (m.has("lattice")) {
      Fields l(m.sub("lattice"), "model.lattice");
      l.optional("kind", c.model.lattice.kind);
      l.optional("lx", c.model.lattice.lx);
      l.optional("ly", c.model.lattice.ly);
      l.optional("boundary", c.model.lattice.boundary);
      l.finish();
      check_choice(c.model.lattice.kind, {"chain", "grid"}, "model.lattice.kind");
      check_choice(c.model.lattice.boundary, {"open", "periodic"}, "model.lattice.boundary");
    }
    m.finish();
  }
  if (root.contains("solver")) {
    auto& s = c.solver;
    Fields f(top.sub("solver"), "solver");
    f.optional("method", s.method);
    f.optional("tol", s.tol);
    f.optional("dt", s.dt);
    f.optional("t_final", s.t_final);
    f.optional("n_samples", s.n_samples);
    f.optional("trajectories", s.trajectories);
    f.optional("seed", s.seed);
    f.optional("unraveling", s.unraveling);
    f.optional("jump_time_tol", s.jump_time_tol);
    f.optional("n_starts", s.n_starts);
    f.optional("n_restarts", s.n_restarts);
    f.optional("max_iter", s.max_iter);
    f.optional("cluster", s.cluster);
    f.optional("jump_threshold", s.jump_threshold);
    f.optional("translation_invariant", s.translation_invariant);
    f.optional("threads", s.threads);
    f.finish();
    check_choice(s.unraveling, {"jump", "qsd"}, "solver.unraveling");
    if (s.cluster.size() != 2) throw ConfigError("solver.cluster: expected [cx, cy]");
    if (!(s.tol > 0.0) || !(s.dt > 0.0) || !(s.t_final > 0.0) || s.n_samples < 1) {
      throw ConfigError("solver: tol, dt, t_final and n_samples must be positive");
    }
  }
  if (root.contains("initial_state")) {
    Fields f(top.sub("initial_state"), "initial_state");
    f.optional("kind", c.initial_state.kind);
    f.optional("index", c.initial_state.index);
    f.finish();
    check_choice(c.initial_state.kind, {"all_down", "all_up", "vacuum", "basis", "maximally_mixed"},
                 "initial_state.kind");
  }
  top.optional("observables", c.observables);
  if (root.contains("scan")) {
    Fields f(top.sub("scan"), "scan");
    ScanSpec s;
    if (!root["scan"].contains("param1")) throw ConfigError("scan: missing required key 'param1'");
    s.param1 = parse_axis(f.sub("param1"), "scan.param1");
    if (f.has("param2")) s.param2 = parse_axis(f.sub("param2"), "scan.param2");
    f.finish();
    c.scan = s;
  }
  if (root.contains("fss")) {
    Fields f(top.sub("fss"), "fss");
    FssSpec s;
    f.optional("records", s.records);
    f.optional("lattices", s.lattices);
    f.optional("alpha_min", s.alpha_min);
    f.optional("alpha_max", s.alpha_max);
    f.optional("grid", s.grid);
    f.finish();
    c.fss = s;
  }
  if (root.contains("output")) {
    Fields f(top.sub("output"), "output");
    f.optional("csv", c.output.csv);
    f.optional("json", c.output.json);
    f.finish();
  }
  top.finish();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) {
  const auto& s = c.solver;
  json j;
  j["schema_version"] = c.schema_version;
  j["model"] = {{"name", c.model.name},
                {"params", c.model.params},
                {"lattice",
                 {{"kind", c.model.lattice.kind},
                  {"lx", c.model.lattice.lx},
                  {"ly", c.model.lattice.ly},
                  {"boundary", c.model.lattice.boundary}}}};
  j["solver"] = {{"method", s.method},
                 {"tol", s.tol},
                 {"dt", s.dt},
                 {"t_final", s.t_final},
                 {"n_samples", s.n_samples},
                 {"trajectories", s.trajectories},
                 {"seed", s.seed},
                 {"unraveling", s.unraveling},
                 {"jump_time_tol", s.jump_time_tol},
                 {"n_starts", s.n_starts},
                 {"n_restarts", s.n_restarts},
                 {"max_iter", s.max_iter},
                 {"cluster", s.cluster},
                 {"jump_threshold", s.jump_threshold},
                 {"translation_invariant", s.translation_invariant},
                 {"threads", s.threads}};
  j["initial_state"] = {{"kind", c.initial_state.kind}, {"index", c.initial_state.index}};
  j["observables"] = c.observables;
  if (c.scan) {
    j["scan"] = {{"param1", axis_json(c.scan->param1)}};
    if (c.scan->param2) j["scan"]["param2"] = axis_json(*c.scan->param2);
  }
  if (c.fss) {
    j["fss"] = {{"records", c.fss->records},
                {"lattices", c.fss->lattices},
                {"alpha_min", c.fss->alpha_min},
                {"alpha_max", c.fss->alpha_max},
                {"grid", c.fss->grid}};
  }
  j["output"] = {{"csv", c.output.csv}, {"json", c.output.json}};
  return j.dump(2);
}

std::string apply_overrides(const std::string& text, const std::vector<std::string>& assignments) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  for (const auto& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("--set expects key=value, got '" + a + "'");
    const std::string path = a.substr(0, eq);
    const std::string raw = a.substr(eq + 1);
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    json* node = &root;
    std::size_t start = 0;
    while (true) {
      const auto dot = path.find('.', start);
      const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
      if (key.empty()) throw ConfigError("--set: empty path component in '" + path + "'");
      if (!node->is_object()) throw ConfigError("--set: '" + path + "' descends into a non-object");
      if (dot == std::string::npos) {
        (*node)[key] = value;
        break;
      }
      node = &(*node)[key];
      if (node->is_null()) *node = json::object();
      start = dot + 1;
    }
  }
  return root.dump();
}

LatticeGraph build_lattice(const LatticeSpec& spec) {
  const Boundary b = spec.boundary == "periodic" ? Boundary::periodic : Boundary::open;
  if (spec.lx < 1 || spec.ly < 1) throw ConfigError("model.lattice: extents must be >= 1");
  if (spec.kind == "chain") {
    if (spec.ly != 1) throw ConfigError("model.lattice: a chain has ly = 1");
    return LatticeGraph::chain(spec.lx, b);
  }
  if (spec.kind == "grid") return LatticeGraph::grid(spec.lx, spec.ly, b);
  throw ConfigError("model.lattice.kind: unsupported value '" + spec.kind + "'");
}

LindbladModel build_model(const ModelSpec& spec) {
  const LatticeGraph lat = build_lattice(spec.lattice);
  auto take = [&](const std::vector<std::string>& names) {
    for (const auto& [k, v] : spec.params) {
      if (std::find(names.begin(), names.end(), k) == names.end()) {
        throw ConfigError("model.params: unknown parameter '" + k + "' for " + spec.name);
      }
    }
    std::vector<double> out;
    for (const auto& n : names) {
      const auto it = spec.params.find(n);
      if (it == spec.params.end()) throw ConfigError("model.params: missing '" + n + "' for " + spec.name);
      out.push_back(it->second);
    }
    return out;
  };
  try {
    if (spec.name == "dissipative_ising") {
      const auto p = take({"h", "V", "gamma"});
      return build_dissipative_ising(lat, p[0], p[1], p[2]);
    }
    if (spec.name == "driven_bose_hubbard") {
      const auto p = take({"J", "U", "delta_omega", "F", "gamma", "n_max"});
      if (p[5] < 1.0 || p[5] != std::floor(p[5])) throw ConfigError("model.params.n_max: expected a positive integer");
      return build_driven_bose_hubbard(lat, p[0], p[1], p[2], p[3], p[4], static_cast<std::size_t>(p[5]));
    }
    if (spec.name == "dissipative_heisenberg") {
      const auto p = take({"Jx", "Jy", "Jz", "gamma"});
      return build_dissipative_heisenberg(lat, p[0], p[1], p[2], p[3]);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  throw ConfigError("model.name: unknown model '" + spec.name + "'");
}

namespace {

Index basis_index(const LindbladModel& model, const InitialStateSpec& spec) {
  const auto& space = model.space();
  if (spec.kind == "all_up" || spec.kind == "vacuum") return 0;
  if (spec.kind == "all_down") {
    for (auto d : space.site_dims()) {
      if (d != 2) throw ConfigError("initial_state: all_down needs qubit sites");
    }
    return space.total_dim() - 1;
  }
  if (spec.kind == "basis") {
    if (spec.index < 0 || spec.index >= space.total_dim()) throw ConfigError("initial_state.index: out of range");
    return static_cast<Index>(spec.index);
  }
  throw ConfigError("initial_state: '" + spec.kind + "' is not a pure basis state");
}

}  // namespace

DensityMatrix build_initial_state(const LindbladModel& model, const InitialStateSpec& spec) {
  if (spec.kind == "maximally_mixed") return DensityMatrix::maximally_mixed(model.dim());
  return DensityMatrix::basis_state(model.dim(), basis_index(model, spec));
}

Vector build_initial_vector(const LindbladModel& model, const InitialStateSpec& spec) {
  Vector psi = Vector::Zero(model.dim());
  psi[basis_index(model, spec)] = 1.0;
  return psi;
}

}  // namespace oqs::cli
