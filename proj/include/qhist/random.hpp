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

// Seeded generators for randomized suites. Draws are derived directly from the
// mt19937_64 bit stream (no std distributions) so results are identical across
// standard libraries.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "qhist/cv_dyadic.hpp"
#include "qhist/erasure.hpp"
#include "qhist/qubit_core.hpp"

namespace qhist {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(gen_() % span);
  }
  std::complex<double> complex() { return {uniform(-1, 1), uniform(-1, 1)}; }

  /// Normalized (alpha, beta).
  AmplitudePair<double> qubit_pair() {
    std::complex<double> a = complex(), b = complex();
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
  }

 private:
  std::mt19937_64 gen_;
};

inline RegisterStated random_register(Rng& rng, int n_qubits) {
  RegisterStated::Amplitudes a(Eigen::Index{1} << n_qubits);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = rng.complex();
  a.normalize();
  return {n_qubits, std::move(a)};
}

/// Normalized wave on [0,1) at the given level, every cell random.
inline DyadicWaved random_unit_wave(Rng& rng, int level) {
  DyadicWaved::Coeffs c(Eigen::Index{1} << level);
  for (Eigen::Index k = 0; k < c.size(); ++k) c(k) = rng.complex();
  c *= 1 / std::sqrt(std::ldexp(c.squaredNorm(), -level));
  return {level, 0, std::move(c)};
}

/// Wave with arbitrary placement: random offset in [-2, 2) units and up to 3 units long.
inline DyadicWaved random_wave(Rng& rng, int level) {
  const std::int64_t unit = std::int64_t{1} << level;
  const std::int64_t offset = rng.integer(-2 * unit, 2 * unit - 1);
  const auto cells = static_cast<Eigen::Index>(rng.integer(1, 3 * unit));
  DyadicWaved::Coeffs c(cells);
  for (Eigen::Index k = 0; k < cells; ++k) c(k) = rng.complex();
  return {level, offset, std::move(c)};
}

/// Normalized joint state; with unit_support the CV part lies in [0,1), otherwise
/// it spans a random window of up to 3 units around [-2, 2).
inline HybridStated random_hybrid(Rng& rng, int n_qubits, int level, bool unit_support) {
  const std::int64_t unit = std::int64_t{1} << level;
  const std::int64_t offset = unit_support ? 0 : rng.integer(-2 * unit, 2 * unit - 1);
  const auto cells = static_cast<Eigen::Index>(unit_support ? unit : rng.integer(1, 3 * unit));
  HybridStated::Table t(Eigen::Index{1} << n_qubits, cells);
  for (Eigen::Index r = 0; r < t.rows(); ++r) {
    for (Eigen::Index k = 0; k < cells; ++k) t(r, k) = rng.complex();
  }
  t *= 1 / std::sqrt(std::ldexp(t.squaredNorm(), -level));
  return {n_qubits, level, offset, std::move(t)};
}

}  // namespace qhist
