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

#include "qhist/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "qhist/errors.hpp"

namespace qhist {
namespace {

void dump_into(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) out += ',';
        first = false;
        out += Json(key).dump();
        out += ':';
        dump_into(value, out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_into(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

void csv_row(std::ostream& os, double left, double right, std::complex<double> v) {
  os << format_double(left) << ',' << format_double(right) << ',' << format_double(v.real()) << ','
     << format_double(v.imag()) << ',' << format_double(std::norm(v)) << '\n';
}

constexpr const char* kCsvHeader = "x_left,x_right,re,im,abs2\n";

int get_int(const Json& j, const std::string& key, const std::string& path) {
  if (!j.contains(key)) throw ValidationError(path + "." + key + ": missing");
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw ValidationError(path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::vector<int> get_int_list(const Json& j, const std::string& key, const std::string& path, bool required) {
  if (!j.contains(key)) {
    if (required) throw ValidationError(path + "." + key + ": missing");
    return {};
  }
  const auto& v = j.at(key);
  if (!v.is_array()) throw ValidationError(path + "." + key + ": expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number_integer()) {
      throw ValidationError(path + "." + key + "[" + std::to_string(i) + "]: expected an integer");
    }
    out.push_back(v[i].get<int>());
  }
  return out;
}

std::complex<double> parse_complex(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ValidationError(path + ": expected a number or [re, im]");
}

ProgramStep step_from_json(const Json& s, const std::string& path) {
  if (!s.is_object()) throw ValidationError(path + ": expected an object");
  if (!s.contains("op") || !s.at("op").is_object()) throw ValidationError(path + ".op: missing or not an object");
  const auto& op = s.at("op");
  const std::string op_path = path + ".op";
  const std::string kind = op.value("kind", "");
  ProgramStep step{GateOp{}, get_int_list(s, "clean", path, false)};
  if (kind == "reversible") {
    if (!op.contains("table")) throw ValidationError(op_path + ".table: missing");
    const auto& t = op.at("table");
    std::optional<TruthTable> table;
    if (t.is_string()) {
      try {
        table = named_truth_table(t.get<std::string>());
      } catch (const ValidationError& e) {
        throw ValidationError(op_path + ".table: " + e.what());
      }
    } else {
      table = truth_table_from_json(t, op_path + ".table");
    }
    RevMode mode = RevMode::Xor;
    if (op.contains("mode")) {
      if (!op.at("mode").is_string()) throw ValidationError(op_path + ".mode: expected a string");
      try {
        mode = rev_mode_from_string(op.at("mode").get<std::string>());
      } catch (const ValidationError& e) {
        throw ValidationError(op_path + ".mode: " + e.what());
      }
    }
    step.op = ReversibleOp{*table, mode, get_int_list(op, "x", op_path, true), get_int_list(op, "y", op_path, true)};
  } else if (kind == "gate") {
    if (!op.contains("name") || !op.at("name").is_string()) throw ValidationError(op_path + ".name: missing");
    step.op = GateOp{op.at("name").get<std::string>(), get_int_list(op, "targets", op_path, true)};
  } else {
    throw ValidationError(op_path + ".kind: expected \"reversible\" or \"gate\"");
  }
  return step;
}

}  // namespace

std::string format_double(double v) {
  if (v == 0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string dump_json(const Json& j) {
  std::string out;
  dump_into(j, out);
  return out;
}

void write_wave_csv(std::ostream& os, const DyadicWaved& w) {
  os << kCsvHeader;
  const double width = w.cell_width();
  for (Eigen::Index k = 0; k < w.cells(); ++k) {
    const auto g = static_cast<double>(w.offset() + k);
    csv_row(os, g * width, (g + 1) * width, w.coeffs()(k));
  }
}

void write_wave_csv(std::ostream& os, const GridWaved& g) {
  os << kCsvHeader;
  const auto& s = g.samples();
  Eigen::Index first = 0, last = s.size() - 1;
  while (first < s.size() && s(first) == 0.0) ++first;
  if (first == s.size()) {
    csv_row(os, g.x(0), g.x(0) + g.h(), 0.0);
    return;
  }
  while (s(last) == 0.0) --last;
  for (Eigen::Index j = first; j <= last; ++j) csv_row(os, g.x(j), g.x(j) + g.h(), s(j));
}

TruthTable truth_table_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw ValidationError(path + ": expected an object");
  const int n_in = get_int(j, "n_in", path);
  const int m_out = get_int(j, "m_out", path);
  if (!j.contains("outputs") || !j.at("outputs").is_array()) {
    throw ValidationError(path + ".outputs: missing or not an array");
  }
  const auto& arr = j.at("outputs");
  std::vector<std::uint64_t> outputs;
  outputs.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number_integer() || arr[i].get<std::int64_t>() < 0) {
      throw ValidationError(path + ".outputs[" + std::to_string(i) + "]: expected a nonnegative integer");
    }
    outputs.push_back(arr[i].get<std::uint64_t>());
  }
  try {
    return TruthTable(n_in, m_out, std::move(outputs));
  } catch (const ValidationError& e) {
    throw ValidationError(path + "." + e.what());
  }
}

Program program_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("$: program must be a JSON object");
  Program p;
  p.data = get_int(j, "data", "$");
  p.ancilla = get_int(j, "ancilla", "$");
  p.cv_level = j.contains("cv_level") ? get_int(j, "cv_level", "$") : 0;
  if (p.data < 1 || p.data > kMaxRegisterQubits) throw ValidationError("$.data: out of range");
  if (p.ancilla < 0 || p.data + p.ancilla > kMaxRegisterQubits) throw ValidationError("$.ancilla: out of range");
  if (j.contains("init")) {
    const auto& init = j.at("init");
    if (init.contains("basis")) {
      const int b = get_int(init, "basis", "$.init");
      if (b < 0 || b >= (1 << p.data)) throw ValidationError("$.init.basis: out of range");
      p.init = basis_state<double>(p.data, static_cast<BasisIndex>(b));
    } else if (init.contains("amplitudes") && init.at("amplitudes").is_array()) {
      const auto& arr = init.at("amplitudes");
      RegisterStated::Amplitudes amps(static_cast<Eigen::Index>(arr.size()));
      for (std::size_t i = 0; i < arr.size(); ++i) {
        amps(static_cast<Eigen::Index>(i)) = parse_complex(arr[i], "$.init.amplitudes[" + std::to_string(i) + "]");
      }
      try {
        p.init = RegisterStated(p.data, std::move(amps));
      } catch (const Error& e) {
        throw ValidationError(std::string("$.init.amplitudes: ") + e.what());
      }
      if (!p.init->is_normalized(1e-9)) throw ValidationError("$.init.amplitudes: state is not normalized");
    } else {
      throw ValidationError("$.init: expected {\"basis\": int} or {\"amplitudes\": [...]}");
    }
  }
  if (!j.contains("steps") || !j.at("steps").is_array()) throw ValidationError("$.steps: missing or not an array");
  const auto& steps = j.at("steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    p.steps.push_back(step_from_json(steps[i], "$.steps[" + std::to_string(i) + "]"));
  }
  try {
    validate_program(p);
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("$.") + e.what());
  }
  return p;
}

Json to_json(const StepMetrics& m) {
  Json j;
  j["ancilla_residual"] = m.ancilla_residual;
  j["data_purity"] = m.data_purity;
  j["cv_level"] = m.cv_level;
  j["joint_cells"] = m.joint_cells;
  j["norm2"] = m.norm2;
  return j;
}

Json to_json(const ResourceReport& r) {
  Json j;
  j["plain_reversible_ancillas"] = r.plain_reversible_ancillas;
  j["cv_scheme_qubits"] = r.cv_scheme_qubits;
  j["cv_final_level"] = r.cv_final_level;
  j["joint_cells"] = r.joint_cells;
  return j;
}

}  // namespace qhist
