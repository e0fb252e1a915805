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

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "oqs/cli/pipelines.hpp"

int main(int argc, char** argv) {
  CLI::App app{"oqs: open quantum system solvers"};
  app.require_subcommand(1);

  std::map<std::string, oqs::cli::RunOptions> options;
  std::map<std::string, std::uint64_t> seeds;
  std::map<std::string, int> threads;
  const std::map<std::string, std::string> about = {
      {"evolve", "integrate the master equation"},
      {"steady", "steady state of the Liouvillian"},
      {"traj", "quantum-trajectory ensemble"},
      {"meanfield", "mean-field steady states and stability"},
      {"variational", "product-state variational steady states"},
      {"scan", "stable mean-field solution count over a parameter grid"},
      {"fss", "finite-size scaling collapse"}};
  for (const auto& name : oqs::cli::command_names()) {
    auto& o = options[name];
    o.command = name;
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--config", o.config_path, "JSON run configuration")->required();
    sub->add_option("--set", o.overrides, "override a config entry, key.path=value")->take_all();
    sub->add_option("--seed", seeds[name], "master seed override");
    sub->add_option("--threads", threads[name], "worker cap; results do not depend on it");
    sub->add_option("--output", o.csv_out, "CSV result path ('-' for stdout)");
    sub->add_option("--json-out", o.json_out, "JSON result mirror path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : oqs::cli::kExitConfig;
  }

  for (auto* sub : app.get_subcommands()) {
    auto& o = options.at(sub->get_name());
    if (sub->count("--seed")) o.seed = seeds.at(sub->get_name());
    if (sub->count("--threads")) o.threads = threads.at(sub->get_name());
    return oqs::cli::run_command(o, std::cout, std::cerr);
  }
  return oqs::cli::kExitConfig;
}
