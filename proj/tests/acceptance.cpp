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


// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qhist/diff.hpp"
#include "qhist/erasure.hpp"
#include "qhist/processor.hpp"
#include "qhist/random.hpp"
#include "qhist/revcomp.hpp"

using namespace qhist;
namespace fs = std::filesystem;
using C = std::complex<double>;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Tracks the worst observed value of a metric against its bound.
struct Worst {
  double value = 0;
  void see(double v) { value = std::max(value, std::isnan(v) ? INFINITY : v); }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

RegisterStated qubit(C a, C b) {
  RegisterStated::Amplitudes v(2);
  v << a, b;
  return {1, v};
}

const double r2 = std::sqrt(2.0);

Verdict conditional_translation() {
  Rng rng(101);
  bool ok = true;
  for (int level = 0; level <= 6; ++level) {
    const auto one = cond_translate(lift(basis_state<double>(1, 1), indicator_unit<double>(level)), 0, 1);
    const auto w = one.row_wave(1);
    ok = ok && w.support_begin() == 1.0 && w.support_end() == 2.0 && one.row_wave(0).is_zero() &&
         w == translate_int(indicator_unit<double>(level), 1);
    for (int t = 0; t < 10; ++t) {
      const auto zero = lift(basis_state<double>(1, 0), random_wave(rng, level));
      ok = ok && cond_translate(zero, 0, rng.integer(-3, 3)) == zero;
    }
  }
  return {ok, "levels 0..6, cell-exact"};
}

Verdict conditional_flip() {
  Rng rng(102);
  bool ok = true;
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.integer(1, 3));
    const int level = static_cast<int>(rng.integer(0, 5));
    const auto h = random_hybrid(rng, n, level, false);
    const int q = static_cast<int>(rng.integer(0, n - 1));
    const auto f = cond_flip(h, q, FlipVariant::OutsideUnit);
    // Cell-by-cell check against the definition.
    const std::int64_t unit = std::int64_t{1} << level;
    for (std::int64_t g = h.begin_cell(); g < h.end_cell(); ++g) {
      const bool outside = g < 0 || g >= unit;
      for (BasisIndex r = 0; r < (BasisIndex{1} << n); ++r) {
        const BasisIndex src = outside ? (r ^ (BasisIndex{1} << q)) : r;
        ok = ok && f.row_wave(r).cell_value(g) == h.row_wave(src).cell_value(g);
      }
    }
    ok = ok && cond_flip(f, q, FlipVariant::OutsideUnit) == h;
    ok = ok && cond_flip(cond_flip(h, q, FlipVariant::InsideOneTwo), q, FlipVariant::InsideOneTwo) == h;

    // [0,2)-supported state: both variants flip exactly the [1,2) part.
    const auto a = random_hybrid(rng, n, level, true);
    const auto b = random_hybrid(rng, n, level, true);
    HybridStated::Table tab = HybridStated::Table::Zero(a.rows(), 2 * unit);
    tab.leftCols(unit) = a.amps();
    tab.rightCols(unit) = b.amps();
    const HybridStated two(n, level, 0, tab / r2);
    ok = ok && cond_flip(two, q, FlipVariant::OutsideUnit) == cond_flip(two, q, FlipVariant::InsideOneTwo);
    ok = ok && tft(a, q, FlipVariant::OutsideUnit) == tft(a, q, FlipVariant::InsideOneTwo);
  }
  return {ok, "100 random states, involution and variant agreement exact"};
}

// Max over fine cell midpoints in [-1, 3) of |row 0 - model| and |row 1|.
double model_error(const HybridStated& h, const std::function<C(double)>& model, int level) {
  double err = 0;
  const double w = std::ldexp(1.0, -level);
  for (double x = -1 + w / 2; x < 3; x += w) {
    err = std::max(err, std::abs(h.row_wave(0).value_at(x) - model(x)));
    err = std::max(err, std::abs(h.row_wave(1).value_at(x)));
  }
  return err;
}

Verdict tft_contract() {
  Rng rng(103);
  Worst err;
  for (int t = 0; t < 100; ++t) {
    const auto [a, b] = rng.qubit_pair();
    const int level = static_cast<int>(rng.integer(0, 6));
    const auto psi = random_unit_wave(rng, level);
    const auto out = tft(lift(qubit(a, b), psi), 0);
    err.see(model_error(out, [&](double x) { return a * psi.value_at(x) + b * psi.value_at(x - 1); }, level + 1));
  }
  return {err.value <= 1e-15, "max cell error " + sci(err.value) + " (bound 1e-15)"};
}

Verdict erase_contract() {
  Rng rng(104);
  Worst cell, weight, drift;
  for (int t = 0; t < 100; ++t) {
    const auto [a, b] = rng.qubit_pair();
    const int level = static_cast<int>(rng.integer(0, 6));
    const auto psi = random_unit_wave(rng, level);
    const auto h = lift(qubit(a, b), psi);
    const auto e = erase(h, 0);
    cell.see(model_error(
        e, [&](double x) { return r2 * (a * psi.value_at(2 * x) + b * psi.value_at(2 * x - 1)); }, level + 2));
    weight.see(e.one_weight(0));
    drift.see(std::abs(e.norm2() - h.norm2()));
  }
  const bool ok = cell.value <= 1e-15 && weight.value <= 1e-15 && drift.value <= 1e-12;
  return {ok, "cell " + sci(cell.value) + ", |1> weight " + sci(weight.value) + ", norm drift " + sci(drift.value)};
}

Verdict iterated_erasure() {
  Rng rng(105);
  Worst err;
  bool levels = true;
  for (int t = 0; t < 24; ++t) {
    const int n = 1 + t % 12;
    std::vector<AmplitudePair<double>> pairs;
    std::vector<ErasureStep<double>> steps;
    for (int i = 0; i < n; ++i) {
      pairs.push_back(rng.qubit_pair());
      steps.push_back({0, SingleQubitGate<double>::preparing(pairs.back().first, pairs.back().second)});
    }
    const auto run = erase_sequence(lift(basis_state<double>(1, 0), indicator_unit<double>(0)),
                                    std::span<const ErasureStep<double>>(steps));
    levels = levels && run.state.level() == n;
    for (std::size_t i = 0; i < run.trace.size(); ++i) levels = levels && run.trace[i].level == static_cast<int>(i) + 1;
    err.see(max_cell_diff(run.state.row_wave(0), tensor_oracle<double>(pairs)));
    err.see(run.state.row_wave(1).is_zero() ? 0.0 : INFINITY);
  }
  // Repeated subdivision: always keeping the |0> branch halves the support each step.
  bool halves = true;
  auto h = lift(basis_state<double>(1, 0), indicator_unit<double>(0));
  for (int i = 1; i <= 12; ++i) {
    h = erase(h, 0);
    const auto w = h.row_wave(0);
    halves = halves && w.support_begin() == 0 && w.support_length() == std::ldexp(1.0, -i) &&
             std::abs(w.coeffs()(0) - std::pow(2.0, i / 2.0)) <= 1e-12;
  }
  return {err.value <= 1e-12 && levels && halves,
          "max cell error vs closed form " + sci(err.value) + " (bound 1e-12), n = 1..12"};
}

Verdict unitarity() {
  Rng rng(106);
  Worst drift;
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.integer(1, 4));
    const int level = static_cast<int>(rng.integer(0, 6));
    const auto h = random_hybrid(rng, n, level, false);
    const auto u = random_hybrid(rng, n, level, true);
    const int q = static_cast<int>(rng.integer(0, n - 1));
    const auto [a, b] = rng.qubit_pair();
    drift.see(std::abs(cond_translate(h, q, rng.integer(-3, 3)).norm2() - 1));
    drift.see(std::abs(cond_flip(h, q, FlipVariant::OutsideUnit).norm2() - 1));
    drift.see(std::abs(cond_flip(h, q, FlipVariant::InsideOneTwo).norm2() - 1));
    drift.see(std::abs(squeeze_all(h).norm2() - 1));
    drift.see(std::abs(tft(h, q).norm2() - 1));
    drift.see(std::abs(erase(u, q).norm2() - 1));
    drift.see(std::abs(apply_single_qubit(h, q, SingleQubitGate<double>::preparing(a, b)).norm2() - 1));
  }
  return {drift.value <= 1e-12, "max norm drift " + sci(drift.value) + " (bound 1e-12)"};
}

Verdict backend_cross_check() {
  Rng rng(107);
  const auto geom = GridGeometryd::window(-2, 2, 4096);
  Worst l2, spectral;
  for (int t = 0; t < 6; ++t) {
    const int n = static_cast<int>(rng.integer(1, 2));
    auto h = random_hybrid(rng, n, static_cast<int>(rng.integer(0, 4)), true);
    auto gs = to_grid(h, geom);
    auto gf = gs;
    for (int step = 0; step < 3; ++step) {
      const int q = static_cast<int>(rng.integer(0, n - 1));
      h = erase(h, q);
      gs = erase(gs, q, TranslationMethod::Shift);
      gf = erase(gf, q, TranslationMethod::Spectral);
      l2.see(compare_to_dyadic(gs, h).l2_err);
      l2.see(compare_to_dyadic(gf, h).l2_err);
    }
    const auto w = sample_dyadic(random_unit_wave(rng, static_cast<int>(rng.integer(0, 6))), geom);
    spectral.see((translate_spectral(w, 1.0).samples() - translate_shift(w, 1).samples()).cwiseAbs().maxCoeff());
  }
  return {l2.value <= 1e-9 && spectral.value <= 1e-9,
          "erase pipeline L2 " + sci(l2.value) + ", spectral vs shift " + sci(spectral.value) + " (bound 1e-9)"};
}

Verdict dilation() {
  const double pi = std::numbers::pi;
  const auto geom = GridGeometryd::window(-12, 12, 512);
  const auto g = sample_function<double>([&](double x) { return C(std::exp(-x * x / 2) / std::pow(pi, 0.25)); }, geom);
  const auto exact =
      sample_function<double>([&](double x) { return C(r2 * std::exp(-2 * x * x) / std::pow(pi, 0.25)); }, geom);
  const auto out = dilation_generator(g);
  const double rel = (out.samples() - exact.samples()).norm() / exact.samples().norm();
  return {rel <= 1e-4, "relative L2 error " + sci(rel) + " (bound 1e-4)"};
}

Verdict involution() {
  Rng rng(109);
  std::int64_t tables = 0;
  bool ok = true;
  auto check = [&](const TruthTable& tt) {
    ++tables;
    for (auto mode : {RevMode::Xor, RevMode::ModSub}) {
      const auto p = build_reversible(tt, mode);
      ok = ok && check_involution(p).involution;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << tt.n_in()); ++x) {
        ok = ok && p(x, 0) == std::pair<std::uint64_t, std::uint64_t>{x, tt(x)};
      }
    }
  };
  for (int n = 0; n <= 11; ++n) {
    for (int m = 1; n + m <= 12; ++m) {
      const std::uint64_t entries = std::uint64_t{1} << n;
      if (static_cast<std::uint64_t>(m) * entries <= 16) {
        // Every table of this shape.
        const std::uint64_t count = std::uint64_t{1} << (m * entries);
        for (std::uint64_t code = 0; code < count; ++code) {
          std::vector<std::uint64_t> out(entries);
          for (std::uint64_t x = 0; x < entries; ++x) out[x] = (code >> (x * m)) & ((std::uint64_t{1} << m) - 1);
          check({n, m, out});
        }
      } else {
        for (int t = 0; t < 8; ++t) {
          std::vector<std::uint64_t> out(entries);
          for (auto& v : out) v = static_cast<std::uint64_t>(rng.integer(0, (std::int64_t{1} << m) - 1));
          check({n, m, out});
        }
      }
    }
  }
  return {ok, std::to_string(tables) + " tables, every (x, y) pair, both modes"};
}

Verdict processor_loop() {
  Worst residual, drift;
  bool levels = true;
  const ProgramStep and_step{ReversibleOp{named_truth_table("AND"), RevMode::Xor, {0, 1}, {2}}, {2}};
  const std::vector<ProgramStep> steps(10, and_step);
  for (BasisIndex d = 0; d < 4; ++d) {
    const auto run = run_program(init_processor(2, 1, basis_state<double>(2, d), 0), steps);
    for (std::size_t i = 0; i < run.trace.size(); ++i) {
      residual.see(run.trace[i].ancilla_residual);
      drift.see(std::abs(run.trace[i].norm2 - 1));
    }
    levels = levels && run.trace.size() == 10 && run.trace.back().cv_level == 10;
  }
  Program p;
  p.data = 1;
  p.ancilla = 1;
  p.steps = {{GateOp{"H", {0}}, {}}, {GateOp{"CNOT", {0, 1}}, {1}}};
  const double purity_err = std::abs(run_program(p).trace.back().data_purity - 0.5);
  const bool ok = residual.value <= 1e-15 && drift.value <= 1e-12 && levels && purity_err <= 1e-12;
  return {ok, "residual " + sci(residual.value) + ", norm drift " + sci(drift.value) + ", cv_level 10: " +
                  (levels ? "yes" : "no") + ", purity error " + sci(purity_err)};
}

Verdict resources() {
  bool ok = true;
  const ProgramStep one{ReversibleOp{named_truth_table("AND"), RevMode::Xor, {0, 1}, {2}}, {2}};
  const ProgramStep two{GateOp{"CCX", {0, 1, 2}}, {2, 3}};
  for (int k = 0; k <= 20; ++k) {
    const std::vector<ProgramStep> s1(static_cast<std::size_t>(k), one);
    const auto r1 = resource_report(s1, 0, 2);
    ok = ok && r1.plain_reversible_ancillas == k && r1.cv_scheme_qubits == (k ? 1 : 0) && r1.cv_final_level == k;
    const std::vector<ProgramStep> s2(static_cast<std::size_t>(k), two);
    const auto r2r = resource_report(s2, 3, 2);
    ok = ok && r2r.plain_reversible_ancillas == 2 * k && r2r.cv_scheme_qubits == (k ? 2 : 0) &&
         r2r.cv_final_level == 3 + 2 * k;
  }
  // The simulated level grows by exactly one per clean.
  const std::vector<ProgramStep> s(6, two);
  const auto run = run_program(init_processor(2, 2, basis_state<double>(2, 3), 3), s);
  for (std::size_t i = 0; i < run.trace.size(); ++i) ok = ok && run.trace[i].cv_level == 3 + 2 * static_cast<int>(i + 1);
  return {ok, "plain = total cleans, pool constant, level + 1 per clean (k = 0..20)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Verdict determinism() {
  const fs::path root = fs::temp_directory_path() / "qhist_acceptance_determinism";
  fs::remove_all(root);
  fs::create_directories(root);
  auto put = [&](const std::string& name, const std::string& text) { std::ofstream(root / name) << text; };
  put("prog.json", R"({"data": 2, "ancilla": 1, "init": {"amplitudes": [0.5, 0.5, 0.5, [0, 0.5]]}, "steps": [
    {"op": {"kind": "gate", "name": "H", "targets": [0]}},
    {"op": {"kind": "reversible", "table": "AND", "mode": "xor", "x": [0, 1], "y": [2]}, "clean": [2]},
    {"op": {"kind": "gate", "name": "CNOT", "targets": [1, 2]}, "clean": [2]}]})");
  put("erase.json", R"({"pairs": [[0.6, 0.8], [[0, 1], 0], [0.7071067811865476, [0, 0.7071067811865476]]]})");
  put("erase_grid.json", R"({"pairs": [[0.6, 0.8], [0.8, 0.6]], "backend": "grid", "translation": "spectral",
    "grid": {"x_min": -2, "x_max": 2, "n": 256}})");
  put("validate.json", R"({"seed": 2024, "trials": 20})");
  put("run.json", R"({"program": "prog.json"})");
  const std::vector<std::pair<std::string, std::string>> jobs = {
      {"erase-demo", "erase.json"}, {"erase-demo", "erase_grid.json"}, {"validate", "validate.json"},
      {"processor", "run.json"},    {"resource", "run.json"}};
  bool ok = true;
  int files = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    std::string outs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path dir = root / ("out" + std::to_string(i) + "_" + std::to_string(rep));
      const std::string cmd = std::string(QHIST_CLI_PATH) + " " + jobs[i].first + " " + (root / jobs[i].second).string() +
                              " --out-dir " + dir.string() + " > " + (root / "stdout").string() + std::to_string(i) +
                              "_" + std::to_string(rep) + " 2>&1";
      const int status = std::system(cmd.c_str());
      ok = ok && WIFEXITED(status) && WEXITSTATUS(status) == 0;
      outs[rep] = slurp(root / ("stdout" + std::to_string(i) + "_" + std::to_string(rep)));
    }
    const fs::path a = root / ("out" + std::to_string(i) + "_0");
    const fs::path b = root / ("out" + std::to_string(i) + "_1");
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
    ok = ok && !names.empty() &&
         static_cast<std::size_t>(std::distance(fs::directory_iterator(b), fs::directory_iterator{})) == names.size();
    for (const auto& n : names) {
      ok = ok && fs::exists(b / n) && slurp(a / n) == slurp(b / n);
      ++files;
    }
    // Only the validate and resource commands print data; the others print the output directory.
    if (jobs[i].first == "validate" || jobs[i].first == "resource") ok = ok && outs[0] == outs[1];
  }
  fs::remove_all(root);
  return {ok, std::to_string(files) + " output files compared across two runs of each command"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"conditional translation contract", conditional_translation},
      {"conditional flip contract and involution", conditional_flip},
      {"tft contract", tft_contract},
      {"erase contract", erase_contract},
      {"iterated erasure vs closed form", iterated_erasure},
      {"unitarity sweep", unitarity},
      {"grid vs dyadic cross-validation", backend_cross_check},
      {"squeeze generator form", dilation},
      {"reversible lift involution", involution},
      {"processor loop", processor_loop},
      {"resource accounting", resources},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %s: %s (%.2fs)\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                secs);
    if (!v.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
