// Copyright 2026 The qhist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <CLI11.hpp>

#include <iostream>

#include "qhist/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"qhist: erase ancilla qubits into a continuous history variable"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = "qhist_out";
  std::string backend;
  std::uint64_t seed = 0;
  int max_level = 0;
  double tolerance = 0;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"erase-demo", "Run repeated erasure and dump the CV wave after every step"},
      {"validate", "Run every invariant suite and write a JSON report"},
      {"processor", "Run a program on the toy processor and write per-step metrics"},
      {"resource", "Compare ancilla usage of the plain reversible and CV-history designs"},
  };
  std::vector<CLI::App*> commands;
  std::vector<CLI::Option*> backend_opts, seed_opts, level_opts, tol_opts;
  for (const auto& s : subs) {
    auto* cmd = app.add_subcommand(s.name, s.help);
    cmd->add_option("scenario", scenario, "Scenario JSON file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out-dir", out_dir, "Directory for output files")->capture_default_str();
    backend_opts.push_back(cmd->add_option("--backend", backend, "CV backend")->check(CLI::IsMember({"dyadic", "grid"})));
    seed_opts.push_back(cmd->add_option("--seed", seed, "Seed for randomized suites"));
    level_opts.push_back(cmd->add_option("--max-level", max_level, "Upper bound on the CV level"));
    tol_opts.push_back(cmd->add_option("--tolerance", tolerance, "Override every validation tolerance"));
    commands.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (std::size_t i = 0; i < commands.size(); ++i) {
    if (!commands[i]->parsed()) continue;
    qhist::CliOverrides o;
    if (backend_opts[i]->count()) o.backend = backend;
    if (seed_opts[i]->count()) o.seed = seed;
    if (level_opts[i]->count()) o.max_level = max_level;
    if (tol_opts[i]->count()) o.tolerance = tolerance;
    return qhist::run_command(subs[i].name, scenario, o, out_dir, std::cout, std::cerr);
  }
  return 2;
}
