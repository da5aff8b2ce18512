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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhist/cv_grid.hpp"
#include "qhist/errors.hpp"

namespace qhist {

struct SuiteResult {
  std::string suite;
  int trials = 0;
  double max_error = 0;
  double tolerance = 0;
  bool pass = false;
};

struct ValidationOptions {
  std::uint64_t seed = 0;
  int trials = 100;
  // Grid cross-check suites run only when a grid is given.
  std::optional<GridGeometryd> grid;
  // A global override replaces every suite's default; per-suite entries win over it.
  std::optional<double> tolerance;
  std::map<std::string, double> tolerances;
  Limits limits;
};

/// Names of the suites in report order; grid suites last.
std::vector<std::string> suite_names(bool with_grid);

/// Runs every suite in a fixed order. Results depend only on the options.
std::vector<SuiteResult> run_validation(const ValidationOptions& options);

}  // namespace qhist
