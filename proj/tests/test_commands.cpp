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


#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qhist/commands.hpp"

using namespace qhist;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("qhist_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string read(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(const std::string& cmd, const fs::path& scenario, const fs::path& out_dir, CliOverrides o = {}) {
  std::ostringstream out, err;
  const int code = run_command(cmd, scenario, o, out_dir, out, err);
  return {code, out.str(), err.str()};
}

int cli(const std::string& args) {
  const int status = std::system((std::string(QHIST_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kAndProgram = R"({"data": 2, "ancilla": 1, "cv_level": 0, "init": {"basis": 3}, "steps": [
  {"op": {"kind": "reversible", "table": "AND", "mode": "xor", "x": [0, 1], "y": [2]}, "clean": [2]}]})";

}  // namespace

TEST_CASE("erase-demo writes step dumps and a trace") {
  TempDir d("erase");
  write(d.path / "s.json", R"({"kind": "erase-demo", "pairs": [[1, 0], [0.7071067811865476, 0.7071067811865476]]})");
  const auto r = run("erase-demo", d.path / "s.json", d.path / "out");
  REQUIRE(r.code == 0);
  CHECK(read(d.path / "out" / "wave_step_000.csv") == "x_left,x_right,re,im,abs2\n0,1,1,0,1\n");
  const auto step1 = read(d.path / "out" / "wave_step_001.csv");
  CHECK(step1.rfind("x_left,x_right,re,im,abs2\n0,0.5,1.4142135623730951,0,", 0) == 0);
  CHECK(std::count(step1.begin(), step1.end(), '\n') == 2);
  const auto trace = Json::parse(read(d.path / "out" / "trace.json"));
  REQUIRE(trace.size() == 2);
  CHECK(trace[1]["step"] == 2);
  CHECK(trace[1]["level"] == 2);
  CHECK(trace[1]["ancilla_residual"] == 0);
  CHECK(trace[1]["wave"] == "wave_step_002.csv");

  write(d.path / "e.json", R"({"pairs": []})");
  REQUIRE(run("erase-demo", d.path / "e.json", d.path / "empty").code == 0);
  CHECK(fs::exists(d.path / "empty" / "wave_step_000.csv"));
  CHECK_FALSE(fs::exists(d.path / "empty" / "wave_step_001.csv"));
  CHECK(read(d.path / "empty" / "trace.json") == "[]\n");
}

TEST_CASE("erase-demo on the grid backend agrees with the dyadic dump") {
  TempDir d("erase_grid");
  write(d.path / "s.json", R"({"pairs": [[0, 1]], "backend": "grid", "grid": {"x_min": -2, "x_max": 2, "n": 16}})");
  REQUIRE(run("erase-demo", d.path / "s.json", d.path / "out").code == 0);
  CHECK(read(d.path / "out" / "wave_step_001.csv") ==
        "x_left,x_right,re,im,abs2\n0.5,0.75,1.4142135623730951,0,2.0000000000000004\n"
        "0.75,1,1.4142135623730951,0,2.0000000000000004\n");
}

TEST_CASE("erase-demo error codes") {
  TempDir d("erase_err");
  write(d.path / "bad.json", R"({"pairs": [[1, 1]]})");
  const auto r = run("erase-demo", d.path / "bad.json", d.path / "out");
  CHECK(r.code == 2);
  CHECK(r.err.find("$.pairs[0]") != std::string::npos);
  std::string many = R"({"pairs": [)";
  for (int i = 0; i < 6; ++i) many += std::string(i ? "," : "") + "[1, 0]";
  write(d.path / "deep.json", many + "]}");
  CliOverrides o;
  o.max_level = 4;
  CHECK(run("erase-demo", d.path / "deep.json", d.path / "out", o).code == 3);
  write(d.path / "grid.json", R"({"pairs": [], "grid": {"n": 16}})");
  CHECK(run("erase-demo", d.path / "grid.json", d.path / "out").code == 2);
  write(d.path / "kind.json", R"({"kind": "processor"})");
  CHECK(run("erase-demo", d.path / "kind.json", d.path / "out").code == 2);
  CHECK(run("erase-demo", d.path / "missing.json", d.path / "out").code == 2);
  write(d.path / "broken.json", "{");
  CHECK(run("erase-demo", d.path / "broken.json", d.path / "out").code == 2);
}

TEST_CASE("validate passes by default and fails under an impossible tolerance") {
  TempDir d("validate");
  write(d.path / "s.json", R"({"kind": "validate", "seed": 7, "trials": 10})");
  const auto r = run("validate", d.path / "s.json", d.path / "out");
  CHECK(r.code == 0);
  const auto report = Json::parse(r.out);
  CHECK(report["pass"] == true);
  CHECK(read(d.path / "out" / "validate.json") == r.out);
  for (const auto& s : report["suites"]) {
    CHECK(s["pass"] == true);
    if (s["suite"] == "hybrid_unitarity") CHECK(s["max_error"].get<double>() <= 1e-12);
  }

  write(d.path / "tight.json", R"({"seed": 7, "trials": 10, "tolerances": {"hybrid_unitarity": 1e-18}})");
  const auto t = run("validate", d.path / "tight.json", d.path / "tight");
  CHECK(t.code == 1);
  for (const auto& s : Json::parse(t.out)["suites"]) {
    if (s["suite"] == "hybrid_unitarity") CHECK(s["pass"] == false);
  }

  write(d.path / "noseed.json", R"({"trials": 10})");
  CHECK(run("validate", d.path / "noseed.json", d.path / "out").code == 2);
  write(d.path / "unknown.json", R"({"seed": 1, "tolerances": {"nope": 1}})");
  CHECK(run("validate", d.path / "unknown.json", d.path / "out").code == 2);
}

TEST_CASE("processor writes metrics lines and final dumps") {
  TempDir d("processor");
  write(d.path / "prog.json", kAndProgram);
  write(d.path / "s.json", R"({"kind": "processor", "program": "prog.json"})");
  REQUIRE(run("processor", d.path / "s.json", d.path / "out").code == 0);
  const auto lines = read(d.path / "out" / "metrics.jsonl");
  REQUIRE(std::count(lines.begin(), lines.end(), '\n') == 1);
  const auto m = Json::parse(lines);
  std::vector<std::string> keys;
  for (const auto& [k, v] : m.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"step", "ancilla_residual", "data_purity", "cv_level", "joint_cells", "norm2"});
  CHECK(m["step"] == 1);
  CHECK(m["ancilla_residual"] == 0);
  CHECK(std::abs(m["data_purity"].get<double>() - 1) <= 1e-12);
  CHECK(m["cv_level"] == 1);
  // 8 register rows times the single stored cell at level 1.
  CHECK(m["joint_cells"] == 8);
  CHECK(std::abs(m["norm2"].get<double>() - 1) <= 1e-12);
  CHECK(read(d.path / "out" / "final_cv_row_3.csv") == "x_left,x_right,re,im,abs2\n0.5,1,1.4142135623730951,0,2.0000000000000004\n");

  write(d.path / "empty.json", R"({"program": {"data": 1, "ancilla": 0, "steps": []}})");
  REQUIRE(run("processor", d.path / "empty.json", d.path / "empty").code == 0);
  CHECK(read(d.path / "empty" / "metrics.jsonl").empty());
  CHECK(read(d.path / "empty" / "final_cv_row_0.csv") == "x_left,x_right,re,im,abs2\n0,1,1,0,1\n");

  write(d.path / "bad.json", R"({"program": {"data": 1, "ancilla": 1, "steps": [
    {"op": {"kind": "gate", "name": "X", "targets": [0]}, "clean": [0]}]}})");
  const auto b = run("processor", d.path / "bad.json", d.path / "bad");
  CHECK(b.code == 2);
  CHECK(b.err.find("$.steps[0].clean[0]") != std::string::npos);
}

TEST_CASE("resource report") {
  TempDir d("resource");
  std::string steps;
  for (int i = 0; i < 10; ++i) {
    steps += std::string(i ? "," : "") +
             R"({"op": {"kind": "reversible", "table": "AND", "x": [0, 1], "y": [2]}, "clean": [2]})";
  }
  write(d.path / "s.json", R"({"kind": "resource", "program": {"data": 2, "ancilla": 1, "steps": [)" + steps + "]}}");
  const auto r = run("resource", d.path / "s.json", d.path / "out");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind(R"({"plain_reversible_ancillas":10,"cv_scheme_qubits":1,"cv_final_level":10,)", 0) == 0);
  CHECK(read(d.path / "out" / "resource.json") == r.out);

  write(d.path / "zero.json", R"({"program": {"data": 1, "ancilla": 0, "steps": []}})");
  const auto z = run("resource", d.path / "zero.json", d.path / "zero");
  CHECK(z.out.rfind(R"({"plain_reversible_ancillas":0,"cv_scheme_qubits":0,"cv_final_level":0,)", 0) == 0);
}

TEST_CASE("command-line binary exit codes") {
  TempDir d("cli");
  write(d.path / "ok.json", R"({"pairs": [[1, 0]]})");
  const std::string out = " --out-dir " + (d.path / "out").string();
  CHECK(cli("erase-demo " + (d.path / "ok.json").string() + out) == 0);
  CHECK(cli("erase-demo " + (d.path / "ok.json").string() + out + " --max-level 0") == 3);
  CHECK(cli("erase-demo " + (d.path / "nope.json").string() + out) == 2);
  CHECK(cli("frobnicate") == 2);
  write(d.path / "v.json", R"({"trials": 5})");
  CHECK(cli("validate " + (d.path / "v.json").string() + out + " --seed 3") == 0);
  CHECK(cli("validate " + (d.path / "v.json").string() + out + " --seed 3 --tolerance 1e-18") == 1);
}
