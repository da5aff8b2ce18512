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

// Scenario files and the four command-line commands.
//
// Exit codes: 0 success, 1 validation failure, 2 input/schema error, 3 resource limit.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhist/erasure.hpp"
#include "qhist/io.hpp"

namespace qhist {

enum class Backend { Dyadic, Grid };

struct GridOptions {
  double x_min = -2;
  double x_max = 2;
  std::int64_t n = 4096;
};

/// Scenario JSON:
///   {"kind": "erase-demo" | "validate" | "processor" | "resource",
///    "backend": "dyadic" | "grid", "grid": {"x_min": -2, "x_max": 2, "n": 4096},
///    "max_level": 24, "tolerance": 1e-12, "tolerances": {"suite": tol}, "seed": 7,
///    "trials": 100, "pairs": [[alpha, beta], ...], "base_level": 0,
///    "translation": "shift" | "spectral", "program": "file.json" | {...}}
/// Complex amplitudes are numbers or [re, im].
struct ScenarioConfig {
  std::string kind;
  Backend backend = Backend::Dyadic;
  std::optional<GridOptions> grid;
  Limits limits;
  std::optional<double> tolerance;
  std::map<std::string, double> tolerances;
  std::optional<std::uint64_t> seed;
  int trials = 100;
  std::vector<AmplitudePair<double>> pairs;
  int base_level = 0;
  TranslationMethod translation = TranslationMethod::Shift;
  std::optional<Json> program;
  // Directory of the scenario file; relative program paths resolve against it.
  std::filesystem::path base_dir;
};

ScenarioConfig scenario_from_json(const Json& j, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);

struct CliOverrides {
  std::optional<std::string> backend;
  std::optional<std::uint64_t> seed;
  std::optional<int> max_level;
  std::optional<double> tolerance;
};

/// Applies command-line flags and checks the cross-field rules for `command`
/// (grid options only with the grid backend, a seed for validate, kind match).
void finalize_config(ScenarioConfig& config, const CliOverrides& overrides, const std::string& command);

Program load_program(const ScenarioConfig& config);

int cmd_erase_demo(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_validate(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_processor(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& out);
int cmd_resource(const ScenarioConfig& config, const std::filesystem::path& out_dir, std::ostream& out);

/// Loads the scenario, applies overrides, runs the command and maps errors to exit codes.
int run_command(const std::string& command, const std::filesystem::path& scenario, const CliOverrides& overrides,
                const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace qhist
