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

#include "qhist/processor.hpp"

#include <algorithm>
#include <numeric>

namespace qhist {
namespace {

const std::vector<std::string> kSingleQubitGates = {"X", "Y", "Z", "H", "S", "T"};

int gate_arity(const std::string& name) {
  if (std::find(kSingleQubitGates.begin(), kSingleQubitGates.end(), name) != kSingleQubitGates.end()) return 1;
  if (name == "CNOT" || name == "SWAP") return 2;
  if (name == "CCX") return 3;
  return -1;
}

SingleQubitGate<double> single_gate(const std::string& name) {
  if (name == "X") return SingleQubitGate<double>::X();
  if (name == "Y") return SingleQubitGate<double>::Y();
  if (name == "Z") return SingleQubitGate<double>::Z();
  if (name == "H") return SingleQubitGate<double>::H();
  if (name == "S") return SingleQubitGate<double>::S();
  return SingleQubitGate<double>::T();
}

BasisPermutation permutation_gate(const std::string& name, const std::vector<int>& t, int n_total) {
  const std::uint64_t dim = std::uint64_t{1} << n_total;
  std::vector<BasisIndex> map(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t j = i;
    auto bit = [&](int q) { return (i >> q) & 1; };
    if (name == "CNOT") {
      if (bit(t[0])) j ^= std::uint64_t{1} << t[1];
    } else if (name == "CCX") {
      if (bit(t[0]) && bit(t[1])) j ^= std::uint64_t{1} << t[2];
    } else {  // SWAP
      if (bit(t[0]) != bit(t[1])) j ^= (std::uint64_t{1} << t[0]) | (std::uint64_t{1} << t[1]);
    }
    map[i] = j;
  }
  return BasisPermutation(std::move(map));
}

std::vector<int> data_qubits(int n_data) {
  std::vector<int> q(static_cast<std::size_t>(n_data));
  std::iota(q.begin(), q.end(), 0);
  return q;
}

std::string at(std::size_t i) { return "steps[" + std::to_string(i) + "]"; }

void check_qubit_list(const std::vector<int>& qubits, int n_total, const std::string& path) {
  std::vector<int> seen;
  for (std::size_t k = 0; k < qubits.size(); ++k) {
    const int q = qubits[k];
    const std::string p = path + "[" + std::to_string(k) + "]";
    if (q < 0 || q >= n_total) throw ValidationError(p + ": qubit " + std::to_string(q) + " out of range");
    if (std::find(seen.begin(), seen.end(), q) != seen.end()) {
      throw ValidationError(p + ": qubit " + std::to_string(q) + " listed twice");
    }
    seen.push_back(q);
  }
}

void validate_step(const ProgramStep& step, std::size_t i, int n_data, int n_total) {
  const std::string base = at(i);
  if (const auto* rev = std::get_if<ReversibleOp>(&step.op)) {
    if (static_cast<int>(rev->x_qubits.size()) != rev->table.n_in()) {
      throw ValidationError(base + ".op.x: expected " + std::to_string(rev->table.n_in()) + " qubits");
    }
    if (static_cast<int>(rev->y_qubits.size()) != rev->table.m_out()) {
      throw ValidationError(base + ".op.y: expected " + std::to_string(rev->table.m_out()) + " qubits");
    }
    std::vector<int> all = rev->x_qubits;
    all.insert(all.end(), rev->y_qubits.begin(), rev->y_qubits.end());
    check_qubit_list(all, n_total, base + ".op.qubits");
    if (rev->table.n_in() + rev->table.m_out() > kMaxReversibleBits) {
      throw ValidationError(base + ".op.table: n_in + m_out exceeds " + std::to_string(kMaxReversibleBits));
    }
  } else {
    const auto& g = std::get<GateOp>(step.op);
    const int arity = gate_arity(g.name);
    if (arity < 0) throw ValidationError(base + ".op.name: unknown gate '" + g.name + "'");
    if (static_cast<int>(g.targets.size()) != arity) {
      throw ValidationError(base + ".op.targets: gate " + g.name + " takes " + std::to_string(arity) + " qubits");
    }
    check_qubit_list(g.targets, n_total, base + ".op.targets");
  }
  check_qubit_list(step.clean, n_total, base + ".clean");
  for (std::size_t k = 0; k < step.clean.size(); ++k) {
    if (step.clean[k] < n_data) {
      throw ValidationError(base + ".clean[" + std::to_string(k) + "]: qubit " + std::to_string(step.clean[k]) +
                            " is a data qubit; only ancillas may be erased");
    }
  }
}

}  // namespace

void validate_program(const Program& program) {
  if (program.data < 1) throw ValidationError("data: need at least one data qubit");
  if (program.ancilla < 0) throw ValidationError("ancilla: must be nonnegative");
  if (program.data + program.ancilla > kMaxRegisterQubits) {
    throw ValidationError("data + ancilla exceeds " + std::to_string(kMaxRegisterQubits) + " qubits");
  }
  if (program.cv_level < 0) throw ValidationError("cv_level: must be nonnegative");
  if (program.init && program.init->n_qubits() != program.data) {
    throw ValidationError("init: state has " + std::to_string(program.init->n_qubits()) + " qubits, expected " +
                          std::to_string(program.data));
  }
  for (std::size_t i = 0; i < program.steps.size(); ++i) {
    validate_step(program.steps[i], i, program.data, program.data + program.ancilla);
  }
}

ProcessorState init_processor(int n_data, int n_anc, const RegisterStated& data_state, int cv_level,
                              const Limits& limits) {
  if (n_data < 1 || n_anc < 0) throw DomainError("need n_data >= 1 and n_anc >= 0");
  if (data_state.n_qubits() != n_data) throw DomainError("data state size does not match n_data");
  if (!data_state.is_normalized()) throw ContractError("initial data state must be normalized");
  if (n_data + n_anc > kMaxRegisterQubits) throw ResourceError("register too large");
  const auto reg = tensor(data_state, basis_state<double>(n_anc, 0));
  ProcessorState ps{lift(reg, indicator_unit<double>(cv_level, limits), limits), n_data, n_anc, 0, cv_level, 0, {}};
  return ps;
}

StepMetrics measure(const ProcessorState& ps) {
  StepMetrics m;
  const auto& h = ps.hybrid;
  const Eigen::Index anc_mask = ((Eigen::Index{1} << ps.anc_count) - 1) << ps.data_count;
  double acc = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    if (r & anc_mask) acc += h.amps().row(r).squaredNorm();
  }
  m.ancilla_residual = std::ldexp(acc, -h.level());
  const auto keep = data_qubits(ps.data_count);
  m.data_purity = purity(hybrid_reduced_density(h, std::span<const int>(keep)));
  m.cv_level = h.level();
  m.joint_cells = static_cast<std::int64_t>(h.rows()) * h.cells();
  m.norm2 = h.norm2();
  return m;
}

StepResult run_step(const ProcessorState& ps, const ProgramStep& step, const Limits& limits) {
  const int n_total = ps.data_count + ps.anc_count;
  validate_step(step, static_cast<std::size_t>(ps.step_index), ps.data_count, n_total);

  ProcessorState next = ps;
  if (const auto* rev = std::get_if<ReversibleOp>(&step.op)) {
    const auto perm = as_register_permutation(build_reversible(rev->table, rev->mode), rev->x_qubits,
                                              rev->y_qubits, n_total);
    next.hybrid = apply_permutation(next.hybrid, perm);
  } else {
    const auto& g = std::get<GateOp>(step.op);
    if (gate_arity(g.name) == 1) {
      next.hybrid = apply_single_qubit(next.hybrid, g.targets[0], single_gate(g.name));
    } else {
      next.hybrid = apply_permutation(next.hybrid, permutation_gate(g.name, g.targets, n_total));
    }
  }

  auto clean = step.clean;
  std::sort(clean.begin(), clean.end());
  for (int q : clean) {
    next.hybrid = erase(next.hybrid, q, limits);
    ++next.erase_count;
    const double residual = next.hybrid.one_weight(q);
    if (residual > 1e-12) {
      throw ContractError("ancilla " + std::to_string(q) + " retains weight " + std::to_string(residual) +
                          " after erasure");
    }
  }
  ++next.step_index;
  const auto metrics = measure(next);
  next.history.push_back(metrics);
  return {std::move(next), metrics};
}

ProgramRun run_program(ProcessorState ps, std::span<const ProgramStep> steps, const Limits& limits) {
  std::vector<StepMetrics> trace;
  trace.reserve(steps.size());
  for (const auto& step : steps) {
    auto result = run_step(ps, step, limits);
    ps = std::move(result.state);
    trace.push_back(result.metrics);
  }
  return {std::move(ps), std::move(trace)};
}

ProgramRun run_program(const Program& program, const Limits& limits) {
  validate_program(program);
  const RegisterStated data = program.init ? *program.init : basis_state<double>(program.data, 0);
  auto ps = init_processor(program.data, program.ancilla, data, program.cv_level, limits);
  return run_program(std::move(ps), std::span<const ProgramStep>(program.steps), limits);
}

ResourceReport resource_report(std::span<const ProgramStep> steps, int initial_level, int data_qubits) {
  ResourceReport r;
  for (const auto& s : steps) {
    const auto n = static_cast<std::int64_t>(s.clean.size());
    r.plain_reversible_ancillas += n;
    r.cv_scheme_qubits = std::max(r.cv_scheme_qubits, n);
  }
  r.cv_final_level = initial_level + r.plain_reversible_ancillas;
  const std::int64_t exponent = data_qubits + r.cv_scheme_qubits + r.cv_final_level;
  if (exponent > 62) throw ResourceError("joint table size 2^" + std::to_string(exponent) + " overflows");
  r.joint_cells = std::int64_t{1} << exponent;
  return r;
}

}  // namespace qhist
