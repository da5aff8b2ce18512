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

#include "qhist/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "qhist/processor.hpp"
#include "qhist/validation.hpp"

namespace fs = std::filesystem;

namespace qhist {
namespace {

const std::vector<std::string> kCommands = {"erase-demo", "validate", "processor", "resource"};

std::complex<double> parse_amp(const Json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw ConfigError(path + ": expected a number or [re, im]");
}

template <typename T>
T get_number(const Json& j, const char* key) {
  const auto& v = j.at(key);
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(std::string("$.") + key + ": expected an integer");
  } else {
    if (!v.is_number()) throw ConfigError(std::string("$.") + key + ": expected a number");
  }
  return v.get<T>();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << content;
}

std::string wave_csv(const DyadicWaved& w) {
  std::ostringstream os;
  write_wave_csv(os, w);
  return os.str();
}

std::string wave_csv(const GridWaved& g) {
  std::ostringstream os;
  write_wave_csv(os, g);
  return os.str();
}

std::string step_file(int step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "wave_step_%03d.csv", step);
  return buf;
}

GridGeometryd grid_geometry(const ScenarioConfig& c) {
  const auto& g = c.grid.value();
  return GridGeometryd::window(g.x_min, g.x_max, static_cast<Eigen::Index>(g.n));
}

std::vector<ErasureStep<double>> demo_steps(const ScenarioConfig& c) {
  std::vector<ErasureStep<double>> steps;
  for (std::size_t i = 0; i < c.pairs.size(); ++i) {
    try {
      steps.push_back({0, SingleQubitGate<double>::preparing(c.pairs[i].first, c.pairs[i].second, 1e-9)});
    } catch (const ContractError& e) {
      throw ConfigError("$.pairs[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return steps;
}

Json trace_entry(int step, int level, int qubit, double norm2, double residual, const std::string& file) {
  Json e;
  e["step"] = step;
  e["level"] = level;
  e["qubit"] = qubit;
  e["norm2"] = norm2;
  e["ancilla_residual"] = residual;
  e["wave"] = file;
  return e;
}

}  // namespace

ScenarioConfig scenario_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("$: scenario must be a JSON object");
  ScenarioConfig c;
  c.base_dir = base_dir;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw ConfigError("$.kind: expected a string");
    c.kind = j.at("kind").get<std::string>();
    if (std::find(kCommands.begin(), kCommands.end(), c.kind) == kCommands.end()) {
      throw ConfigError("$.kind: unknown scenario kind '" + c.kind + "'");
    }
  }
  if (j.contains("backend")) {
    const auto b = j.at("backend").is_string() ? j.at("backend").get<std::string>() : std::string();
    if (b == "dyadic") {
      c.backend = Backend::Dyadic;
    } else if (b == "grid") {
      c.backend = Backend::Grid;
    } else {
      throw ConfigError("$.backend: expected \"dyadic\" or \"grid\"");
    }
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (!g.is_object()) throw ConfigError("$.grid: expected an object");
    GridOptions opt;
    if (g.contains("x_min")) opt.x_min = get_number<double>(g, "x_min");
    if (g.contains("x_max")) opt.x_max = get_number<double>(g, "x_max");
    if (g.contains("n")) opt.n = get_number<std::int64_t>(g, "n");
    c.grid = opt;
  }
  if (j.contains("max_level")) c.limits.max_level = get_number<int>(j, "max_level");
  if (j.contains("tolerance")) c.tolerance = get_number<double>(j, "tolerance");
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) throw ConfigError("$.tolerances: expected an object");
    for (const auto& [name, value] : t.items()) {
      if (!value.is_number()) throw ConfigError("$.tolerances." + name + ": expected a number");
      c.tolerances[name] = value.get<double>();
    }
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ConfigError("$.seed: expected a nonnegative integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("trials")) c.trials = get_number<int>(j, "trials");
  if (j.contains("pairs")) {
    const auto& p = j.at("pairs");
    if (!p.is_array()) throw ConfigError("$.pairs: expected an array");
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::string path = "$.pairs[" + std::to_string(i) + "]";
      if (!p[i].is_array() || p[i].size() != 2) throw ConfigError(path + ": expected [alpha, beta]");
      c.pairs.emplace_back(parse_amp(p[i][0], path + "[0]"), parse_amp(p[i][1], path + "[1]"));
    }
  }
  if (j.contains("base_level")) c.base_level = get_number<int>(j, "base_level");
  if (j.contains("translation")) {
    const auto t = j.at("translation").is_string() ? j.at("translation").get<std::string>() : std::string();
    if (t == "shift") {
      c.translation = TranslationMethod::Shift;
    } else if (t == "spectral") {
      c.translation = TranslationMethod::Spectral;
    } else {
      throw ConfigError("$.translation: expected \"shift\" or \"spectral\"");
    }
  }
  if (j.contains("program")) c.program = j.at("program");
  return c;
}

ScenarioConfig load_scenario(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open scenario file " + path.string());
  Json j;
  try {
    j = Json::parse(f);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

void finalize_config(ScenarioConfig& c, const CliOverrides& o, const std::string& command) {
  if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end()) {
    throw ConfigError("unknown command '" + command + "'");
  }
  if (!c.kind.empty() && c.kind != command) {
    throw ConfigError("$.kind: scenario is a '" + c.kind + "' scenario, not '" + command + "'");
  }
  c.kind = command;
  if (o.backend) {
    if (*o.backend == "dyadic") {
      c.backend = Backend::Dyadic;
    } else if (*o.backend == "grid") {
      c.backend = Backend::Grid;
    } else {
      throw ConfigError("--backend: expected dyadic or grid");
    }
  }
  if (o.seed) c.seed = o.seed;
  if (o.max_level) c.limits.max_level = *o.max_level;
  if (o.tolerance) c.tolerance = o.tolerance;

  if (c.limits.max_level < 0 || c.limits.max_level > 40) throw ConfigError("max_level must be in [0, 40]");
  if (c.base_level < 0) throw ConfigError("$.base_level: must be nonnegative");
  if (c.trials < 1) throw ConfigError("$.trials: must be positive");
  if (c.backend == Backend::Dyadic && c.grid) {
    throw ConfigError("$.grid: grid options require backend \"grid\"");
  }
  if (c.backend == Backend::Grid) {
    if (!c.grid) c.grid = GridOptions{};
    const auto geom = grid_geometry(c);
    geom.origin_index();
    geom.per_unit();
  }
  if (command == "validate" && !c.seed) throw ConfigError("$.seed: validate needs a seed (scenario or --seed)");
  if ((command == "processor" || command == "resource") && !c.program) {
    throw ConfigError("$.program: missing");
  }
}

Program load_program(const ScenarioConfig& c) {
  if (!c.program) throw ConfigError("$.program: missing");
  Json j = *c.program;
  if (j.is_string()) {
    const fs::path p = c.base_dir / j.get<std::string>();
    std::ifstream f(p);
    if (!f) throw ConfigError("$.program: cannot open " + p.string());
    try {
      j = Json::parse(f);
    } catch (const Json::parse_error& e) {
      throw ConfigError(p.string() + ": " + e.what());
    }
  }
  return program_from_json(j);
}

int cmd_erase_demo(const ScenarioConfig& c, const fs::path& out_dir, std::ostream& out) {
  fs::create_directories(out_dir);
  const auto steps = demo_steps(c);
  const auto base = indicator_unit<double>(c.base_level, c.limits);
  Json trace = Json::array();

  if (c.backend == Backend::Dyadic) {
    auto state = lift(basis_state<double>(1, 0), base, c.limits);
    write_file(out_dir / step_file(0), wave_csv(state.row_wave(0)));
    const auto run = erase_sequence(state, std::span<const ErasureStep<double>>(steps), c.limits);
    for (const auto& r : run.trace) {
      const auto file = step_file(r.step);
      write_file(out_dir / file, wave_csv(r.state.row_wave(0)));
      trace.push_back(trace_entry(r.step, r.level, r.qubit, r.norm2, r.ancilla_residual, file));
    }
  } else {
    const auto geom = grid_geometry(c);
    auto state = lift(basis_state<double>(1, 0), sample_dyadic(base, geom));
    write_file(out_dir / step_file(0), wave_csv(state.row_wave(0)));
    int level = c.base_level;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      detail::check_level(level + 1, c.limits);
      state = erase(apply_single_qubit(state, 0, *steps[i].prepare), 0, c.translation);
      ++level;
      const int step = static_cast<int>(i) + 1;
      const auto file = step_file(step);
      write_file(out_dir / file, wave_csv(state.row_wave(0)));
      trace.push_back(trace_entry(step, level, 0, state.norm2(), state.one_weight(0), file));
    }
  }
  write_file(out_dir / "trace.json", dump_json(trace) + "\n");
  out << "erase-demo: " << c.pairs.size() << " step(s), dumps in " << out_dir.string() << "\n";
  return 0;
}

int cmd_validate(const ScenarioConfig& c, const fs::path& out_dir, std::ostream& out) {
  ValidationOptions opt;
  opt.seed = c.seed.value();
  opt.trials = c.trials;
  opt.tolerance = c.tolerance;
  opt.tolerances = c.tolerances;
  opt.limits = c.limits;
  if (c.backend == Backend::Grid) opt.grid = grid_geometry(c);
  for (const auto& [name, tol] : c.tolerances) {
    const auto names = suite_names(true);
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError("$.tolerances." + name + ": unknown suite");
    }
  }
  const auto results = run_validation(opt);
  bool all = true;
  Json suites = Json::array();
  for (const auto& r : results) {
    Json s;
    s["suite"] = r.suite;
    s["trials"] = r.trials;
    s["max_error"] = r.max_error;
    s["tolerance"] = r.tolerance;
    s["pass"] = r.pass;
    suites.push_back(s);
    all = all && r.pass;
  }
  Json report;
  report["seed"] = opt.seed;
  report["backend"] = c.backend == Backend::Grid ? "grid" : "dyadic";
  report["pass"] = all;
  report["suites"] = suites;
  const auto text = dump_json(report) + "\n";
  fs::create_directories(out_dir);
  write_file(out_dir / "validate.json", text);
  out << text;
  return all ? 0 : 1;
}

int cmd_processor(const ScenarioConfig& c, const fs::path& out_dir, std::ostream& out) {
  const auto program = load_program(c);
  const auto run = run_program(program, c.limits);
  fs::create_directories(out_dir);
  std::string lines;
  for (std::size_t i = 0; i < run.trace.size(); ++i) {
    Json j;
    j["step"] = i + 1;
    const Json metrics = to_json(run.trace[i]);
    for (const auto& [k, v] : metrics.items()) j[k] = v;
    lines += dump_json(j) + "\n";
  }
  write_file(out_dir / "metrics.jsonl", lines);
  const auto& h = run.state.hybrid;
  int dumped = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    const auto w = h.row_wave(static_cast<BasisIndex>(r));
    if (w.is_zero()) continue;
    write_file(out_dir / ("final_cv_row_" + std::to_string(r) + ".csv"), wave_csv(w));
    ++dumped;
  }
  out << "processor: " << run.trace.size() << " step(s), final level " << h.level() << ", " << dumped
      << " nonzero register row(s) dumped to " << out_dir.string() << "\n";
  return 0;
}

int cmd_resource(const ScenarioConfig& c, const fs::path& out_dir, std::ostream& out) {
  const auto program = load_program(c);
  const auto report = resource_report(std::span<const ProgramStep>(program.steps), program.cv_level, program.data);
  const auto text = dump_json(to_json(report)) + "\n";
  fs::create_directories(out_dir);
  write_file(out_dir / "resource.json", text);
  out << text;
  return 0;
}

int run_command(const std::string& command, const fs::path& scenario, const CliOverrides& overrides,
                const fs::path& out_dir, std::ostream& out, std::ostream& err) {
  try {
    auto config = load_scenario(scenario);
    finalize_config(config, overrides, command);
    if (command == "erase-demo") return cmd_erase_demo(config, out_dir, out);
    if (command == "validate") return cmd_validate(config, out_dir, out);
    if (command == "processor") return cmd_processor(config, out_dir, out);
    return cmd_resource(config, out_dir, out);
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ContractError& e) {
    err << "contract violation: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qhist
