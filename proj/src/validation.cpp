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

#include "qhist/validation.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "qhist/diff.hpp"
#include "qhist/erasure.hpp"
#include "qhist/processor.hpp"
#include "qhist/random.hpp"
#include "qhist/revcomp.hpp"

namespace qhist {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
  int trials = 0;
  double max_error = 0;
  void add(double e) { max_error = std::max(max_error, std::isnan(e) ? kInf : e); }
};

struct Context {
  const ValidationOptions& options;
  Rng rng;
};

using SuiteFn = std::function<Outcome(Context&)>;

struct Suite {
  std::string name;
  double tolerance;
  bool grid;
  SuiteFn run;
};

BasisPermutation random_permutation(Rng& rng, std::size_t n) {
  std::vector<BasisIndex> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[static_cast<std::size_t>(rng.integer(0, i - 1))]);
  return BasisPermutation(std::move(m));
}

SingleQubitGate<double> random_gate(Rng& rng) {
  const auto [a, b] = rng.qubit_pair();
  return SingleQubitGate<double>::preparing(a, b);
}

HybridStated single_qubit_hybrid(const AmplitudePair<double>& ab, const DyadicWaved& psi) {
  RegisterStated::Amplitudes amps(2);
  amps << ab.first, ab.second;
  return lift(RegisterStated(1, std::move(amps)), psi);
}

Outcome register_norm(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 6));
    const auto s = random_register(c.rng, n);
    const int q = static_cast<int>(c.rng.integer(0, n - 1));
    o.add(std::abs(apply_single_qubit(s, q, random_gate(c.rng)).norm2() - 1));
    o.add(std::abs(apply_permutation(s, random_permutation(c.rng, static_cast<std::size_t>(s.dim()))).norm2() - 1));
  }
  return o;
}

Outcome permutation_inverse(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 6));
    const auto s = random_register(c.rng, n);
    const auto p = random_permutation(c.rng, static_cast<std::size_t>(s.dim()));
    const auto back = apply_permutation(apply_permutation(s, p), p.inverse());
    o.add((back.amps() - s.amps()).cwiseAbs().maxCoeff());
  }
  return o;
}

Outcome dyadic_invariants(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int level = static_cast<int>(c.rng.integer(0, 6));
    const auto w = random_wave(c.rng, level);
    const double n2 = norm2(w);
    const auto shift = c.rng.integer(-3, 3);
    const auto a = c.rng.integer(-2, 1);
    const auto b = a + c.rng.integer(1, 3);
    o.add(std::abs(norm2(translate_int(w, shift)) - n2) / n2);
    o.add(std::abs(norm2(squeeze(w)) - n2) / n2);
    o.add(max_cell_diff(translate_int(translate_int(w, shift), -shift), w));
    o.add(std::max(0.0, norm2(project(w, a, b)) - n2));
    o.add(max_cell_diff(project(project(w, a, b), a, b), project(w, a, b)));
    o.add(std::abs(squeeze(w).support_length() - w.support_length() / 2));
    const int fine = level + static_cast<int>(c.rng.integer(0, 3));
    o.add(max_cell_diff(translate_int(refine(w, fine), shift), refine(translate_int(w, shift), fine)));
    o.add(max_cell_diff(project(refine(w, fine), a, b), refine(project(w, a, b), fine)));
    o.add(max_cell_diff(squeeze(refine(w, fine)), refine(squeeze(w), fine + 1)));
  }
  return o;
}

Outcome hybrid_unitarity(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 4));
    const int level = static_cast<int>(c.rng.integer(0, 6));
    const int q = static_cast<int>(c.rng.integer(0, n - 1));
    const auto h = random_hybrid(c.rng, n, level, false);
    const auto u = random_hybrid(c.rng, n, level, true);
    const double n2 = h.norm2();
    o.add(std::abs(cond_translate(h, q, 1).norm2() - n2));
    o.add(std::abs(cond_translate(h, q, -1).norm2() - n2));
    o.add(std::abs(cond_flip(h, q, FlipVariant::OutsideUnit).norm2() - n2));
    o.add(std::abs(cond_flip(h, q, FlipVariant::InsideOneTwo).norm2() - n2));
    o.add(std::abs(squeeze_all(h).norm2() - n2));
    o.add(std::abs(tft(h, q).norm2() - n2));
    o.add(std::abs(tft(u, q).norm2() - u.norm2()));
    o.add(std::abs(erase(u, q).norm2() - u.norm2()));
  }
  return o;
}

Outcome hybrid_identities(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 4));
    const int level = static_cast<int>(c.rng.integer(0, 6));
    const int q = static_cast<int>(c.rng.integer(0, n - 1));
    const auto h = random_hybrid(c.rng, n, level, false);
    o.add(max_cell_diff(cond_flip(cond_flip(h, q, FlipVariant::OutsideUnit), q, FlipVariant::OutsideUnit), h));
    o.add(max_cell_diff(cond_flip(cond_flip(h, q, FlipVariant::InsideOneTwo), q, FlipVariant::InsideOneTwo), h));
    o.add(max_cell_diff(cond_translate(cond_translate(h, q, 1), q, -1), h));
    o.add(max_cell_diff(cond_translate(cond_translate(h, q, -2), q, 2), h));
    // On [0,2)-supported states both flip variants act on exactly the [1,2) part.
    const auto two = cond_translate(random_hybrid(c.rng, n, level, true), q, 1);
    o.add(max_cell_diff(cond_flip(two, q, FlipVariant::OutsideUnit), cond_flip(two, q, FlipVariant::InsideOneTwo)));
    const auto u = random_hybrid(c.rng, n, level, true);
    o.add(max_cell_diff(tft(u, q, FlipVariant::OutsideUnit), tft(u, q, FlipVariant::InsideOneTwo)));
  }
  return o;
}

// Expected wave a*psi on [0,1) followed by b*psi on [1,2), scaled by `scale`,
// at the level of psi plus `extra_level`.
DyadicWaved two_branch(const AmplitudePair<double>& ab, const DyadicWaved& psi, double scale, int extra_level) {
  const Eigen::Index k = psi.cells();
  DyadicWaved::Coeffs c(2 * k);
  c.head(k) = scale * ab.first * psi.coeffs();
  c.tail(k) = scale * ab.second * psi.coeffs();
  return {psi.level() + extra_level, 0, std::move(c)};
}

Outcome tft_contract(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const auto ab = c.rng.qubit_pair();
    const auto psi = random_unit_wave(c.rng, static_cast<int>(c.rng.integer(0, 6)));
    const auto out = tft(single_qubit_hybrid(ab, psi), 0);
    o.add(max_cell_diff(out.row_wave(0), two_branch(ab, psi, 1.0, 0)));
    o.add(max_cell_diff(out.row_wave(1), DyadicWaved(0, 0, DyadicWaved::Coeffs::Zero(1))));
  }
  return o;
}

Outcome erase_contract(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const auto ab = c.rng.qubit_pair();
    const auto psi = random_unit_wave(c.rng, static_cast<int>(c.rng.integer(0, 6)));
    const auto out = erase(single_qubit_hybrid(ab, psi), 0);
    o.add(max_cell_diff(out.row_wave(0), two_branch(ab, psi, std::sqrt(2.0), 1)));
    o.add(out.one_weight(0));
    if (out.level() != psi.level() + 1) o.add(kInf);
  }
  return o;
}

Outcome erase_norm(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 4));
    const auto h = random_hybrid(c.rng, n, static_cast<int>(c.rng.integer(0, 6)), true);
    o.add(std::abs(erase(h, static_cast<int>(c.rng.integer(0, n - 1))).norm2() - h.norm2()));
  }
  return o;
}

Outcome oracle_equivalence(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(0, 12));
    std::vector<AmplitudePair<double>> pairs;
    std::vector<ErasureStep<double>> steps;
    for (int i = 0; i < n; ++i) {
      pairs.push_back(c.rng.qubit_pair());
      steps.push_back({0, SingleQubitGate<double>::preparing(pairs.back().first, pairs.back().second)});
    }
    const auto start = lift(basis_state<double>(1, 0), indicator_unit<double>(0));
    const auto run = erase_sequence(start, std::span<const ErasureStep<double>>(steps), c.options.limits);
    const auto oracle = tensor_oracle(std::span<const AmplitudePair<double>>(pairs));
    o.add(max_cell_diff(run.state.row_wave(0), oracle));
    o.add(run.state.one_weight(0));
    if (run.state.level() != n) o.add(kInf);
  }
  return o;
}

Outcome branch_orthogonality(Context& c) {
  Outcome o;
  for (int t = 0; t < c.options.trials; ++t, ++o.trials) {
    const int n = static_cast<int>(c.rng.integer(1, 10));
    const auto b1 = static_cast<std::uint64_t>(c.rng.integer(0, (1 << n) - 1));
    auto b2 = static_cast<std::uint64_t>(c.rng.integer(0, (1 << n) - 2));
    if (b2 >= b1) ++b2;
    auto history = [n](std::uint64_t bits) {
      std::vector<AmplitudePair<double>> p;
      for (int i = 0; i < n; ++i) p.push_back(((bits >> i) & 1) ? AmplitudePair<double>{0.0, 1.0} : AmplitudePair<double>{1.0, 0.0});
      return tensor_oracle(std::span<const AmplitudePair<double>>(p));
    };
    const auto w1 = history(b1);
    const auto w2 = history(b2);
    o.add(std::abs(inner(w1, w2)));
    o.add(std::abs(norm2(w1) - 1));
  }
  return o;
}

Outcome revcomp_involution(Context& c) {
  Outcome o;
  for (int bits = 2; bits <= 12; ++bits) {
    for (int m_out = 1; m_out < bits; ++m_out) {
      const int n_in = bits - m_out;
      for (RevMode mode : {RevMode::Xor, RevMode::ModSub}) {
        std::vector<std::uint64_t> out(std::uint64_t{1} << n_in);
        for (auto& v : out) v = static_cast<std::uint64_t>(c.rng.integer(0, (std::int64_t{1} << m_out) - 1));
        const TruthTable tt(n_in, m_out, out);
        const auto p = build_reversible(tt, mode);
        ++o.trials;
        if (!check_involution(p).involution) o.add(1);
        for (std::uint64_t x = 0; x < out.size(); ++x) {
          if (p(x, 0) != std::make_pair(x, tt(x))) o.add(1);
          for (std::uint64_t y = 0; y < (std::uint64_t{1} << m_out); ++y) {
            if (p(x, y) != eval_forward(tt, mode, x, y)) o.add(1);
          }
        }
      }
    }
  }
  return o;
}

ProgramStep and_step() {
  return {ReversibleOp{named_truth_table("AND"), RevMode::Xor, {0, 1}, {2}}, {2}};
}

Outcome processor_ancilla(Context& c) {
  Outcome o;
  for (BasisIndex data = 0; data < 4; ++data) {
    auto ps = init_processor(2, 1, basis_state<double>(2, data), 0, c.options.limits);
    for (int k = 0; k < 10; ++k, ++o.trials) {
      auto r = run_step(ps, and_step(), c.options.limits);
      ps = std::move(r.state);
      o.add(r.metrics.ancilla_residual);
    }
    if (ps.hybrid.level() != 10) o.add(kInf);
  }
  return o;
}

Outcome processor_norm(Context& c) {
  Outcome o;
  for (int t = 0; t < std::max(1, c.options.trials / 10); ++t) {
    auto ps = init_processor(2, 1, random_register(c.rng, 2), 0, c.options.limits);
    for (int k = 0; k < 10; ++k, ++o.trials) {
      auto r = run_step(ps, and_step(), c.options.limits);
      ps = std::move(r.state);
      o.add(std::abs(r.metrics.norm2 - 1));
    }
  }
  return o;
}

Outcome decoherence(Context& c) {
  Outcome o;
  const auto plus = apply_single_qubit(basis_state<double>(1, 0), 0, SingleQubitGate<double>::H());
  auto ps = init_processor(1, 1, plus, 0, c.options.limits);
  const ProgramStep copy{GateOp{"CNOT", {0, 1}}, {1}};
  const auto r = run_step(ps, copy, c.options.limits);
  o.trials = 1;
  o.add(std::abs(r.metrics.data_purity - 0.5));
  return o;
}

Outcome grid_cross_check(Context& c) {
  Outcome o;
  const auto& geom = *c.options.grid;
  const int fine = static_cast<int>(std::log2(static_cast<double>(geom.per_unit())));
  const int max_level = std::clamp(fine - 1, 0, 6);
  const int trials = std::min(c.options.trials, 20);
  for (int t = 0; t < trials; ++t, ++o.trials) {
    const auto ab = c.rng.qubit_pair();
    const auto psi = random_unit_wave(c.rng, static_cast<int>(c.rng.integer(0, max_level)));
    const auto h = single_qubit_hybrid(ab, psi);
    const auto exact = erase(h, 0);
    o.add(compare_to_dyadic(erase(to_grid(h, geom), 0, TranslationMethod::Shift), exact).l2_err);
    o.add(compare_to_dyadic(erase(to_grid(h, geom), 0, TranslationMethod::Spectral), exact).l2_err);
  }
  return o;
}

Outcome spectral_translation(Context& c) {
  Outcome o;
  const auto& geom = *c.options.grid;
  const int trials = std::min(c.options.trials, 20);
  for (int t = 0; t < trials; ++t, ++o.trials) {
    const auto psi = random_unit_wave(c.rng, static_cast<int>(c.rng.integer(0, 4)));
    const auto g = sample_dyadic(psi, geom);
    o.add((translate_spectral(g, 1.0).samples() - translate_shift(g, 1).samples()).cwiseAbs().maxCoeff());
    const double a = c.rng.uniform(-1, 1);
    const auto back = translate_spectral(translate_spectral(g, a), -a);
    o.add((back.samples() - g.samples()).cwiseAbs().maxCoeff());
  }
  return o;
}

Outcome dilation_check(Context&) {
  Outcome o;
  const auto geom = GridGeometryd::window(-12, 12, 512);
  const double norm = std::pow(std::numbers::pi, -0.25);
  const auto g = sample_function<double>([&](double x) { return std::complex<double>(norm * std::exp(-x * x / 2)); }, geom);
  const auto want = sample_function<double>(
      [&](double x) { return std::complex<double>(std::sqrt(2.0) * norm * std::exp(-2 * x * x)); }, geom);
  const auto got = dilation_generator(g);
  o.trials = 1;
  o.add((got.samples() - want.samples()).norm() / want.samples().norm());
  return o;
}

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"register_norm", 1e-12, false, register_norm},
      {"permutation_inverse", 1e-15, false, permutation_inverse},
      {"dyadic_invariants", 1e-15, false, dyadic_invariants},
      {"hybrid_unitarity", 1e-12, false, hybrid_unitarity},
      {"hybrid_identities", 1e-15, false, hybrid_identities},
      {"tft_contract", 1e-15, false, tft_contract},
      {"erase_contract", 1e-15, false, erase_contract},
      {"erase_norm", 1e-12, false, erase_norm},
      {"oracle_equivalence", 1e-12, false, oracle_equivalence},
      {"branch_orthogonality", 1e-15, false, branch_orthogonality},
      {"revcomp_involution", 0.0, false, revcomp_involution},
      {"processor_ancilla", 1e-15, false, processor_ancilla},
      {"processor_norm", 1e-12, false, processor_norm},
      {"decoherence", 1e-12, false, decoherence},
      {"grid_cross_check", 1e-9, true, grid_cross_check},
      {"spectral_translation", 1e-9, true, spectral_translation},
      {"dilation_generator", 1e-4, true, dilation_check},
  };
  return all;
}

}  // namespace

std::vector<std::string> suite_names(bool with_grid) {
  std::vector<std::string> names;
  for (const auto& s : suites()) {
    if (!s.grid || with_grid) names.push_back(s.name);
  }
  return names;
}

std::vector<SuiteResult> run_validation(const ValidationOptions& options) {
  if (options.trials < 1) throw ConfigError("trials must be positive");
  std::vector<SuiteResult> results;
  std::uint64_t index = 0;
  for (const auto& s : suites()) {
    ++index;
    if (s.grid && !options.grid) continue;
    // Each suite gets its own stream so adding or skipping suites leaves the others unchanged.
    Context ctx{options, Rng(options.seed * 1000003u + index)};
    const Outcome out = s.run(ctx);
    double tol = s.tolerance;
    if (options.tolerance) tol = *options.tolerance;
    if (const auto it = options.tolerances.find(s.name); it != options.tolerances.end()) tol = it->second;
    results.push_back({s.name, out.trials, out.max_error, tol, out.max_error <= tol});
  }
  return results;
}

}  // namespace qhist
