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

// Exact piecewise-constant wavefunctions on dyadic cells.
//
// A DyadicWave at level l stores the values c[k] of psi on the half-open cells
// [(o + k) 2^-l, (o + k + 1) 2^-l), k = 0..K-1, and is zero elsewhere. Integer
// translations, integer-interval projections and the dilation
// psi(x) -> sqrt(2) psi(2x) all map this class to itself without rounding of the
// geometry; only the sqrt(2) factor touches the cell values.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qhist/errors.hpp"
#include "qhist/qubit_core.hpp"

namespace qhist {

template <typename Scalar>
class DyadicWave {
 public:
  using Coeffs = VectorXc<Scalar>;

  /// Builds the canonical form: zero cells at both ends are trimmed. The zero
  /// function is stored as a single zero cell at offset 0.
  DyadicWave(int level, std::int64_t offset, Coeffs coeffs)
      : level_(level), offset_(offset), coeffs_(std::move(coeffs)) {
    if (level_ < 0) throw DomainError("dyadic level must be nonnegative, got " + std::to_string(level_));
    if (level_ > 62) throw ResourceError("dyadic level " + std::to_string(level_) + " exceeds 62");
    if (coeffs_.size() == 0) throw DomainError("a dyadic wave needs at least one cell");
    if (!coeffs_.allFinite()) throw ValidationError("dyadic wave values must be finite");
    canonicalize();
  }

  int level() const { return level_; }
  std::int64_t offset() const { return offset_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Eigen::Index cells() const { return coeffs_.size(); }

  Scalar cell_width() const { return std::ldexp(Scalar(1), -level_); }
  /// Global index of the first stored cell (in units of 2^-level) and one past the last.
  std::int64_t begin_cell() const { return offset_; }
  std::int64_t end_cell() const { return offset_ + static_cast<std::int64_t>(coeffs_.size()); }
  Scalar support_begin() const { return std::ldexp(static_cast<Scalar>(begin_cell()), -level_); }
  Scalar support_end() const { return std::ldexp(static_cast<Scalar>(end_cell()), -level_); }
  Scalar support_length() const { return std::ldexp(static_cast<Scalar>(cells()), -level_); }

  bool is_zero() const { return coeffs_.size() == 1 && coeffs_(0) == Complex<Scalar>(0); }

  /// Value on global cell g (zero outside the stored range).
  Complex<Scalar> cell_value(std::int64_t g) const {
    if (g < begin_cell() || g >= end_cell()) return Complex<Scalar>(0);
    return coeffs_(static_cast<Eigen::Index>(g - offset_));
  }

  /// Pointwise value; cells own their left endpoint.
  Complex<Scalar> value_at(Scalar x) const {
    const Scalar g = std::floor(std::ldexp(x, level_));
    if (g < static_cast<Scalar>(begin_cell()) || g >= static_cast<Scalar>(end_cell())) return Complex<Scalar>(0);
    return cell_value(static_cast<std::int64_t>(g));
  }

  friend bool operator==(const DyadicWave& a, const DyadicWave& b) {
    return a.level_ == b.level_ && a.offset_ == b.offset_ && a.coeffs_.size() == b.coeffs_.size() &&
           a.coeffs_ == b.coeffs_;
  }

 private:
  void canonicalize() {
    const Eigen::Index n = coeffs_.size();
    Eigen::Index first = 0;
    while (first < n && coeffs_(first) == Complex<Scalar>(0)) ++first;
    if (first == n) {
      offset_ = 0;
      coeffs_ = Coeffs::Zero(1);
      return;
    }
    Eigen::Index last = n - 1;
    while (coeffs_(last) == Complex<Scalar>(0)) --last;
    if (first != 0 || last != n - 1) {
      Coeffs trimmed = coeffs_.segment(first, last - first + 1);
      coeffs_ = std::move(trimmed);
      offset_ += first;
    }
  }

  int level_;
  std::int64_t offset_;
  Coeffs coeffs_;
};

using DyadicWaved = DyadicWave<double>;

namespace detail {

inline void check_level(int level, const Limits& limits) {
  if (level > limits.max_level) {
    throw ResourceError("CV level " + std::to_string(level) + " exceeds max_level " +
                        std::to_string(limits.max_level));
  }
}

inline void check_entries(std::int64_t entries, const Limits& limits) {
  if (entries > limits.max_entries) {
    throw ResourceError("table of " + std::to_string(entries) + " amplitudes exceeds the limit of " +
                        std::to_string(limits.max_entries));
  }
}

inline std::int64_t shifted_cells(std::int64_t t, int level) {
  const std::int64_t bound = std::int64_t{1} << (62 - level);
  if (t >= bound || t <= -bound) throw ResourceError("translation by " + std::to_string(t) + " overflows cell indices");
  return t * (std::int64_t{1} << level);
}

}  // namespace detail

/// Normalized indicator of [0, 1) sampled on 2^level cells.
template <typename Scalar>
DyadicWave<Scalar> indicator_unit(int level, const Limits& limits = {}) {
  if (level < 0) throw DomainError("level must be nonnegative");
  detail::check_level(level, limits);
  detail::check_entries(std::int64_t{1} << level, limits);
  return {level, 0, DyadicWave<Scalar>::Coeffs::Ones(Eigen::Index{1} << level)};
}

/// Same function on a finer grid: each cell split into 2^(target - level) equal cells.
template <typename Scalar>
DyadicWave<Scalar> refine(const DyadicWave<Scalar>& w, int target, const Limits& limits = {}) {
  if (target < w.level()) {
    throw DomainError("cannot refine level " + std::to_string(w.level()) + " down to " + std::to_string(target));
  }
  detail::check_level(target, limits);
  const int d = target - w.level();
  if (d == 0) return w;
  const Eigen::Index r = Eigen::Index{1} << d;
  detail::check_entries(static_cast<std::int64_t>(w.cells()) * r, limits);
  typename DyadicWave<Scalar>::Coeffs fine = w.coeffs().transpose().replicate(r, 1).reshaped();
  return {target, w.offset() * r, std::move(fine)};
}

/// psi(x) -> psi(x - t) for integer t.
template <typename Scalar>
DyadicWave<Scalar> translate_int(const DyadicWave<Scalar>& w, std::int64_t t) {
  if (w.is_zero()) return w;
  return {w.level(), w.offset() + detail::shifted_cells(t, w.level()), w.coeffs()};
}

/// Keeps the cells inside [a, b), zeroes the rest.
template <typename Scalar>
DyadicWave<Scalar> project(const DyadicWave<Scalar>& w, std::int64_t a, std::int64_t b) {
  if (!(a < b)) throw DomainError("projection interval needs a < b");
  const std::int64_t lo = std::max(w.begin_cell(), detail::shifted_cells(a, w.level()));
  const std::int64_t hi = std::min(w.end_cell(), detail::shifted_cells(b, w.level()));
  if (lo >= hi) return {w.level(), 0, DyadicWave<Scalar>::Coeffs::Zero(1)};
  return {w.level(), lo, w.coeffs().segment(lo - w.offset(), hi - lo)};
}

/// psi(x) -> sqrt(2) psi(2x): the geometry moves one level down, values gain sqrt(2).
template <typename Scalar>
DyadicWave<Scalar> squeeze(const DyadicWave<Scalar>& w, const Limits& limits = {}) {
  detail::check_level(w.level() + 1, limits);
  return {w.level() + 1, w.offset(), std::sqrt(Scalar(2)) * w.coeffs()};
}

template <typename Scalar>
Scalar norm2(const DyadicWave<Scalar>& w) {
  return std::ldexp(w.coeffs().squaredNorm(), -w.level());
}

/// <w1|w2>, conjugate-linear in w1.
template <typename Scalar>
Complex<Scalar> inner(const DyadicWave<Scalar>& w1, const DyadicWave<Scalar>& w2) {
  const int level = std::max(w1.level(), w2.level());
  const int d1 = level - w1.level();
  const int d2 = level - w2.level();
  const std::int64_t lo = std::max(w1.begin_cell() << d1, w2.begin_cell() << d2);
  const std::int64_t hi = std::min(w1.end_cell() << d1, w2.end_cell() << d2);
  Complex<Scalar> acc(0);
  for (std::int64_t g = lo; g < hi; ++g) {
    acc += std::conj(w1.cell_value(g >> d1)) * w2.cell_value(g >> d2);
  }
  return std::ldexp(Scalar(1), -level) * acc;
}

template <typename Scalar>
struct WaveSample {
  Scalar x;
  Complex<Scalar> value;
};

/// Step-function samples over the stored support, pts_per_cell per cell.
template <typename Scalar>
std::vector<WaveSample<Scalar>> samples(const DyadicWave<Scalar>& w, int pts_per_cell) {
  if (pts_per_cell < 1) throw DomainError("pts_per_cell must be at least 1");
  std::vector<WaveSample<Scalar>> out;
  out.reserve(static_cast<std::size_t>(w.cells()) * pts_per_cell);
  const Scalar width = w.cell_width();
  for (Eigen::Index k = 0; k < w.cells(); ++k) {
    const Scalar left = static_cast<Scalar>(w.offset() + k) * width;
    for (int p = 0; p < pts_per_cell; ++p) {
      out.push_back({left + width * p / pts_per_cell, w.coeffs()(k)});
    }
  }
  return out;
}

}  // namespace qhist
