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

// File formats. Wave dumps are CSV with header x_left,x_right,re,im,abs2 and one
// row per cell (dyadic) or per sample (grid). Every floating-point value is written
// with 17 significant digits so doubles round-trip exactly.

#pragma once

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

#include "qhist/cv_dyadic.hpp"
#include "qhist/cv_grid.hpp"
#include "qhist/processor.hpp"
#include "qhist/revcomp.hpp"

namespace qhist {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

/// Serializes like Json::dump() but writes floats via format_double.
std::string dump_json(const Json& j);

void write_wave_csv(std::ostream& os, const DyadicWaved& w);
/// Writes the samples between the first and last nonzero one (a single zero row
/// at x_min for the zero wave).
void write_wave_csv(std::ostream& os, const GridWaved& g);

/// Schema {"n_in": int, "m_out": int, "outputs": [int, ...]}. Errors name the
/// offending field, prefixed by `path`.
TruthTable truth_table_from_json(const Json& j, const std::string& path = "$");

/// Schema {"data": int, "ancilla": int, "cv_level": int, "steps": [{"op": {...}, "clean": [int]}],
/// "init": {"basis": int} | {"amplitudes": [[re, im], ...]}}. Ops are
///   {"kind": "reversible", "table": "AND" | {truth table}, "mode": "xor" | "mod_sub", "x": [..], "y": [..]}
///   {"kind": "gate", "name": "H", "targets": [..]}
/// The result is validated with validate_program.
Program program_from_json(const Json& j);

Json to_json(const StepMetrics& m);
Json to_json(const ResourceReport& r);

}  // namespace qhist
