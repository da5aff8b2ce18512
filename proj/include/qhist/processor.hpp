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

// Toy programmable processor: each step applies a reversible evaluation or a
// named gate to data + ancilla qubits, then erases the listed ancillas into a
// single shared CV history mode. Qubits 0..data-1 are data, the rest ancillas.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qhist/erasure.hpp"
#include "qhist/revcomp.hpp"

namespace qhist {

struct ReversibleOp {
  TruthTable table;
  RevMode mode = RevMode::Xor;
  std::vector<int> x_qubits;
  std::vector<int> y_qubits;
};

/// Single-qubit gates X Y Z H S T, and the permutation gates CNOT (control,
/// target), SWAP, CCX (control, control, target).
struct GateOp {
  std::string name;
  std::vector<int> targets;
};

struct ProgramStep {
  std::variant<ReversibleOp, GateOp> op;
  std::vector<int> clean;
};

struct Program {
  int data = 1;
  int ancilla = 0;
  int cv_level = 0;
  std::vector<ProgramStep> steps;
  // Initial data register; |0...0> when absent.
  std::optional<RegisterStated> init;
};

/// Structural checks; the message carries the path of the offending field, e.g.
/// "steps[2].clean[0]: qubit 0 is a data qubit".
void validate_program(const Program& program);

struct StepMetrics {
  double ancilla_residual = 0;
  double data_purity = 1;
  int cv_level = 0;
  std::int64_t joint_cells = 0;
  double norm2 = 1;
};

struct ProcessorState {
  HybridStated hybrid;
  int data_count = 0;
  int anc_count = 0;
  int step_index = 0;
  int initial_level = 0;
  int erase_count = 0;
  std::vector<StepMetrics> history;
};

ProcessorState init_processor(int n_data, int n_anc, const RegisterStated& data_state, int cv_level,
                              const Limits& limits = {});

StepMetrics measure(const ProcessorState& ps);

struct StepResult {
  ProcessorState state;
  StepMetrics metrics;
};

StepResult run_step(const ProcessorState& ps, const ProgramStep& step, const Limits& limits = {});

struct ProgramRun {
  ProcessorState state;
  std::vector<StepMetrics> trace;
};

ProgramRun run_program(ProcessorState ps, std::span<const ProgramStep> steps, const Limits& limits = {});

/// Builds the initial state from a program and runs it.
ProgramRun run_program(const Program& program, const Limits& limits = {});

struct ResourceReport {
  std::int64_t plain_reversible_ancillas = 0;
  std::int64_t cv_scheme_qubits = 0;
  std::int64_t cv_final_level = 0;
  std::int64_t joint_cells = 0;
};

/// Plain reversible design: one fresh zeroed ancilla per clean. CV design: an
/// ancilla pool of the largest per-step clean count, level grows by one per clean.
/// joint_cells is the dense table size 2^(data + pool) * 2^final_level.
ResourceReport resource_report(std::span<const ProgramStep> steps, int initial_level, int data_qubits = 0);

}  // namespace qhist
