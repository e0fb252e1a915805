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


#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "doctest.h"
#include "oqs/analysis/csv.hpp"
#include "oqs/cli/config.hpp"
#include "oqs/cli/pipelines.hpp"
#include "oqs/meanfield/meanfield.hpp"

using namespace oqs;
using namespace oqs::cli;
namespace fs = std::filesystem;

namespace {

const char* kQubit = R"({
  "schema_version": 1,
  "model": {"name": "dissipative_ising", "params": {"h": 0.0, "V": 0.0, "gamma": 1.0},
            "lattice": {"kind": "chain", "lx": 1}},
  "solver": {"tol": 1e-10, "dt": 1e-2, "t_final": 1.0, "n_samples": 4, "trajectories": 200, "seed": 11},
  "initial_state": {"kind": "all_up"},
  "observables": ["up_spin_density", "magnetization_z"]
})";

const char* kFull = R"({
  "schema_version": 1,
  "model": {"name": "driven_bose_hubbard",
            "params": {"J": 1.0, "U": 10.0, "delta_omega": 5.0, "F": 1.0, "gamma": 1.0, "n_max": 3},
            "lattice": {"kind": "grid", "lx": 4, "ly": 4, "boundary": "periodic"}},
  "solver": {"method": "multistart", "tol": 1e-9, "n_starts": 6, "seed": 4, "cluster": [2, 1], "threads": 2},
  "initial_state": {"kind": "basis", "index": 3},
  "observables": ["boson_density"],
  "scan": {"param1": {"name": "delta_omega", "values": [3.0, 5.0]},
           "param2": {"name": "F", "start": 0.5, "stop": 1.5, "count": 3}},
  "fss": {"records": [[4, 1.0, 2.0], [9, 1.0, 3.0]], "lattices": [[2, 1]], "alpha_min": -1, "alpha_max": 1, "grid": 11},
  "output": {"csv": "out.csv", "json": "out.json"}
})";

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("oqs_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(RunOptions opts) {
  std::ostringstream out, err;
  const int code = run_command(opts, out, err);
  return {code, out.str(), err.str()};
}

CsvTable table_of(const std::string& text) {
  std::istringstream is(text);
  return read_csv(is);
}

}  // namespace

TEST_CASE("config round-trip") {
  const RunConfig a = parse_config(kFull);
  CHECK(a.model.lattice.ly == 4);
  REQUIRE(a.scan.has_value());
  REQUIRE(a.scan->param2.has_value());
  CHECK(a.scan->param2->values == std::vector<double>{0.5, 1.0, 1.5});
  CHECK(a.solver.cluster == std::vector<std::size_t>{2, 1});
  const std::string text = serialize_config(a);
  const RunConfig b = parse_config(text);
  CHECK(a == b);
  CHECK(serialize_config(b) == text);
  CHECK(parse_config(serialize_config(parse_config(kQubit))) == parse_config(kQubit));
}

TEST_CASE("config validation") {
  auto rejects = [](const std::string& text) { CHECK_THROWS_AS(parse_config(text), ConfigError); };
  rejects("{");
  rejects(R"({"model": {"name": "dissipative_ising"}})");
  rejects(R"({"schema_version": 2, "model": {"name": "dissipative_ising"}})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising"}, "extra": 1})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising", "lattice": {"kind": "ring"}}})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising"}, "solver": {"tolerance": 1}})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising"}, "solver": {"dt": "fast"}})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising"}, "solver": {"n_samples": 1.5}})");
  rejects(R"({"schema_version": 1, "model": {"name": "dissipative_ising"}, "solver": {"unraveling": "both"}})");
  rejects(R"({"schema_version": 1, "model": {"name": "x"}, "scan": {"param1": {"name": "h"}}})");

  ModelSpec unknown{"ising", {}, {}};
  CHECK_THROWS_AS(build_model(unknown), ConfigError);
  ModelSpec missing{"dissipative_ising", {{"h", 1.0}}, {}};
  CHECK_THROWS_AS(build_model(missing), ConfigError);
  ModelSpec extra{"dissipative_ising", {{"h", 1.0}, {"V", 1.0}, {"gamma", 1.0}, {"U", 2.0}}, {}};
  CHECK_THROWS_AS(build_model(extra), ConfigError);
}

TEST_CASE("overrides use dotted paths") {
  const std::string text = apply_overrides(kQubit, {"solver.seed=5", "model.params.h=2.5", "solver.unraveling=qsd",
                                                    "model.lattice.boundary=periodic"});
  const RunConfig c = parse_config(text);
  CHECK(c.solver.seed == 5);
  CHECK(c.model.params.at("h") == 2.5);
  CHECK(c.solver.unraveling == "qsd");
  CHECK(c.model.lattice.boundary == "periodic");
  CHECK_THROWS_AS(parse_config(apply_overrides(kQubit, {"solver.bogus=1"})), ConfigError);
  CHECK_THROWS_AS(apply_overrides(kQubit, {"no_equals_sign"}), ConfigError);
}

TEST_CASE("initial states") {
  const RunConfig c = parse_config(kQubit);
  const auto model = build_model(c.model);
  CHECK(build_initial_state(model, {"all_up", 0}).matrix()(0, 0) == cplx(1.0));
  CHECK(build_initial_state(model, {"all_down", 0}).matrix()(1, 1) == cplx(1.0));
  CHECK(build_initial_state(model, {"maximally_mixed", 0}).purity() == doctest::Approx(0.5));
  CHECK_THROWS_AS(build_initial_state(model, {"basis", 2}), ConfigError);
  CHECK_THROWS_AS(build_initial_vector(model, {"maximally_mixed", 0}), ConfigError);
}

TEST_CASE("steady pipeline on the decaying qubit") {
  TempDir dir;
  const auto cfg = dir.write("q.json", kQubit);
  const auto r = run({"steady", cfg, {}, {}, {}, "", ""});
  REQUIRE(r.code == kExitOk);
  const auto t = table_of(r.out);
  CHECK(t.number(0, "residual") < 1e-10);
  CHECK(std::abs(t.number(0, "up_spin_density")) < 1e-12);
  CHECK(t.number(0, "magnetization_z") == doctest::Approx(-1.0));
  for (const char* method : {"dense", "ldagl", "evolve"}) {
    const auto m = run({"steady", cfg, {std::string("solver.method=") + method}, {}, {}, "", ""});
    REQUIRE(m.code == kExitOk);
    CHECK(std::abs(table_of(m.out).number(0, "up_spin_density")) < 1e-8);
  }
}

TEST_CASE("evolve pipeline writes exact round-trippable values") {
  TempDir dir;
  const auto cfg = dir.write("q.json", kQubit);
  const auto r = run({"evolve", cfg, {}, {}, {}, dir.file("e.csv"), dir.file("e.json")});
  REQUIRE(r.code == kExitOk);
  const auto t = read_csv_file(dir.file("e.csv"));
  REQUIRE(t.rows.size() == 5);
  for (std::size_t k = 0; k < t.rows.size(); ++k)
    CHECK(std::abs(t.number(k, "up_spin_density") - std::exp(-t.number(k, "time"))) < 1e-9);
  CHECK(slurp(dir.file("e.json")).find("\"invariants\"") != std::string::npos);
}

TEST_CASE("seeded pipelines are reproducible and thread-count independent") {
  TempDir dir;
  const auto cfg = dir.write("q.json", kQubit);
  auto traj = [&](const std::string& tag, std::optional<int> threads, std::optional<std::uint64_t> seed) {
    RunOptions o{"traj", cfg, {}, seed, threads, dir.file(tag + ".csv"), dir.file(tag + ".json")};
    REQUIRE(run(o).code == kExitOk);
    return slurp(dir.file(tag + ".csv")) + slurp(dir.file(tag + ".json"));
  };
  const std::string first = traj("a", std::nullopt, std::nullopt);
  CHECK(first == traj("b", std::nullopt, std::nullopt));
  CHECK(first == traj("c", 1, std::nullopt));
  CHECK(first == traj("d", 8, std::nullopt));
  const std::string reseeded = traj("e", std::nullopt, 12);
  CHECK(reseeded != first);
  CHECK(reseeded.find("master_seed=12") != std::string::npos);
  CHECK(first.find("master_seed=11") != std::string::npos);

  const auto scan_cfg = dir.write("scan.json", R"({
    "schema_version": 1,
    "model": {"name": "dissipative_ising", "params": {"h": 1.0, "V": 5.0, "gamma": 1.0},
              "lattice": {"kind": "grid", "lx": 4, "ly": 4, "boundary": "periodic"}},
    "solver": {"n_starts": 6, "seed": 2, "n_restarts": 2},
    "scan": {"param1": {"name": "h", "values": [2.0, 5.0, 7.5]}}
  })");
  for (const char* command : {"scan", "meanfield", "variational"}) {
    std::vector<std::string> over;
    if (std::string(command) == "variational") over.push_back("solver.method=sweep");
    const auto one = run({command, scan_cfg, over, {}, 1, "", ""});
    const auto eight = run({command, scan_cfg, over, {}, 8, "", ""});
    REQUIRE(one.code == kExitOk);
    CHECK(one.out == eight.out);
  }
}

TEST_CASE("scan pipeline reproduces the module-level stable-count table") {
  TempDir dir;
  const auto cfg = dir.write("bh.json", R"({
    "schema_version": 1,
    "model": {"name": "driven_bose_hubbard",
              "params": {"J": 1.0, "U": 10.0, "delta_omega": 5.0, "F": 1.0, "gamma": 1.0, "n_max": 4},
              "lattice": {"kind": "grid", "lx": 4, "ly": 4, "boundary": "periodic"}},
    "solver": {"n_starts": 6, "seed": 3},
    "scan": {"param1": {"name": "delta_omega", "values": [0.0, 5.0]},
             "param2": {"name": "F", "values": [0.5, 1.0]}}
  })");
  const auto r = run({"scan", cfg, {}, {}, {}, "", ""});
  REQUIRE(r.code == kExitOk);

  const ModelFamily family = [](double dw, double f) {
    return build_driven_bose_hubbard(LatticeGraph::grid(4, 4, Boundary::periodic), 1.0, 10.0, dw, f, 1.0, 4);
  };
  ScanOptions so;
  so.n_starts = 6;
  so.seed = 3;
  std::ostringstream expect;
  write_csv(expect, scan_table(scan_stable_count_serial(family, {0.0, 5.0}, {0.5, 1.0}, so)));
  CHECK(r.out == expect.str());
}

TEST_CASE("remaining pipelines") {
  TempDir dir;
  const auto cfg = dir.write("q.json", kQubit);
  const auto mf = run({"meanfield", cfg, {}, {}, {}, "", ""});
  REQUIRE(mf.code == kExitOk);
  CHECK(table_of(mf.out).rows.size() == 1);
  const auto var = run({"variational", cfg, {}, {}, {}, "", ""});
  REQUIRE(var.code == kExitOk);
  CHECK(table_of(var.out).number(0, "D_value") < 1e-8);
  const auto cluster = run({"meanfield", cfg, {"solver.method=cluster"}, {}, {}, "", ""});
  CHECK(cluster.code == kExitOk);

  const auto fss_cfg = dir.write("fss.json", R"({
    "schema_version": 1,
    "model": {"name": "dissipative_ising", "params": {"h": 1.0, "V": 1.0, "gamma": 1.0}},
    "fss": {"records": [[4, 1.0, 2.0], [16, 1.0, 8.0], [4, 2.0, 3.0], [16, 2.0, 12.0]]}
  })");
  const auto fss = run({"fss", fss_cfg, {}, {}, {}, "", ""});
  REQUIRE(fss.code == kExitOk);
  const auto t = table_of(fss.out);
  REQUIRE(!t.comments.empty());
  CHECK(std::abs(parse_double(t.comments[0].substr(6)) - 1.0) < 1e-6);
}

TEST_CASE("exit codes and diagnostics") {
  TempDir dir;
  const auto cfg = dir.write("q.json", kQubit);
  auto code = [&](RunOptions o) {
    const auto r = run(std::move(o));
    if (r.code != kExitOk) CHECK_FALSE(r.err.empty());
    return r.code;
  };
  CHECK(code({"steady", dir.file("missing.json"), {}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"steady", dir.write("bad.json", R"({"schema_version": 1, "model": {"name": "dissipative_ising"},
                                               "colour": "red"})"), {}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"steady", cfg, {"solver.method=magic"}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"traj", cfg, {"solver.trajectories=1"}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"traj", cfg, {}, {}, 0, "", ""}) == kExitConfig);
  CHECK(code({"scan", cfg, {}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"steady", cfg, {"observables=[\"entropy\"]"}, {}, {}, "", ""}) == kExitConfig);
  CHECK(code({"meanfield", cfg, {"solver.method=steady", "solver.max_iter=1", "model.params.h=2",
                                 "model.params.V=4", "model.lattice.lx=2", "model.lattice.boundary=periodic"},
              {}, {}, "", ""}) == kExitNonConvergence);
  CHECK(code({"evolve", cfg, {"solver.dt=3", "solver.t_final=30", "solver.n_samples=10"}, {}, {}, "", ""}) == kExitFailure);
  CHECK(code({"launch", cfg, {}, {}, {}, "", ""}) == kExitConfig);
}
