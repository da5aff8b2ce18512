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

// Joint qubit (x) continuous-variable states and the erasure gate.
//
// A HybridState holds the amplitude table A[q][k]: row q is a basis state of the
// qubit register, column k a cell of one shared dyadic CV geometry (level l,
// offset o). The joint wavefunction is sum_q |q> (x) psi_q(x) with psi_q equal to
// A[q][k] on cell o + k.
//
// Operators, all unitary:
//   cond_translate(q, t)  |1><1|_q (x) exp(-i p t) + |0><0|_q (x) 1
//   cond_flip(q, v)       X_q on cells outside [0,1) (OutsideUnit) or on cells in
//                         [1,2) (InsideOneTwo); identity elsewhere
//   squeeze_all           1 (x) [psi(x) -> sqrt(2) psi(2x)]
//   tft(q)                translate(+1), flip, translate(-1), applied in that order
//   erase(q)              tft(q) followed by squeeze_all
//
// On inputs whose CV support lies in [0,1), tft maps
//   (a|0> + b|1>) (x) psi(x)  ->  |0> (x) (a psi(x) + b psi(x - 1))
// and erase maps it to |0> (x) sqrt(2)(a psi(2x) + b psi(2x - 1)), again supported
// in [0,1). Repeated erasure therefore writes one binary digit per step into the
// CV wavefunction.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhist/cv_dyadic.hpp"
#include "qhist/cv_grid.hpp"
#include "qhist/errors.hpp"
#include "qhist/qubit_core.hpp"

namespace qhist {

enum class FlipVariant {
  OutsideUnit,   // flip where the CV component lies outside [0,1)
  InsideOneTwo,  // flip where the CV component lies inside [1,2)
};

template <typename Scalar>
class HybridState {
 public:
  using Table = MatrixXc<Scalar>;

  /// Trims all-zero boundary columns; an all-zero table keeps a single column at offset 0.
  HybridState(int n_qubits, int level, std::int64_t offset, Table amps)
      : n_qubits_(n_qubits), level_(level), offset_(offset), amps_(std::move(amps)) {
    if (n_qubits_ < 0 || n_qubits_ > kMaxRegisterQubits) throw ResourceError("hybrid register too large");
    if (amps_.rows() != (Eigen::Index{1} << n_qubits_)) {
      throw ValidationError("hybrid table needs " + std::to_string(Eigen::Index{1} << n_qubits_) + " rows, got " +
                            std::to_string(amps_.rows()));
    }
    if (amps_.cols() < 1) throw DomainError("hybrid table needs at least one cell");
    if (level_ < 0 || level_ > 62) throw DomainError("CV level out of range");
    if (!amps_.allFinite()) throw ValidationError("hybrid amplitudes must be finite");
    canonicalize();
  }

  int n_qubits() const { return n_qubits_; }
  int level() const { return level_; }
  std::int64_t offset() const { return offset_; }
  const Table& amps() const { return amps_; }
  Eigen::Index rows() const { return amps_.rows(); }
  Eigen::Index cells() const { return amps_.cols(); }
  std::int64_t begin_cell() const { return offset_; }
  std::int64_t end_cell() const { return offset_ + static_cast<std::int64_t>(amps_.cols()); }

  Scalar norm2() const { return std::ldexp(amps_.squaredNorm(), -level_); }

  /// CV component attached to register basis state q (unnormalized).
  DyadicWave<Scalar> row_wave(BasisIndex q) const {
    return {level_, offset_, amps_.row(static_cast<Eigen::Index>(q)).transpose()};
  }

  /// Probability weight on rows where qubit q reads 1.
  Scalar one_weight(int q) const {
    detail::check_qubit(q, n_qubits_);
    Scalar acc = 0;
    for (Eigen::Index r = 0; r < amps_.rows(); ++r) {
      if ((r >> q) & 1) acc += amps_.row(r).squaredNorm();
    }
    return std::ldexp(acc, -level_);
  }

  friend bool operator==(const HybridState& a, const HybridState& b) {
    return a.n_qubits_ == b.n_qubits_ && a.level_ == b.level_ && a.offset_ == b.offset_ &&
           a.amps_.cols() == b.amps_.cols() && a.amps_ == b.amps_;
  }

 private:
  void canonicalize() {
    const Eigen::Index n = amps_.cols();
    auto zero_col = [this](Eigen::Index k) { return (amps_.col(k).array() == Complex<Scalar>(0)).all(); };
    Eigen::Index first = 0;
    while (first < n && zero_col(first)) ++first;
    if (first == n) {
      offset_ = 0;
      amps_ = Table::Zero(amps_.rows(), 1);
      return;
    }
    Eigen::Index last = n - 1;
    while (zero_col(last)) --last;
    if (first != 0 || last != n - 1) {
      Table trimmed = amps_.middleCols(first, last - first + 1);
      amps_ = std::move(trimmed);
      offset_ += first;
    }
  }

  int n_qubits_;
  int level_;
  std::int64_t offset_;
  Table amps_;
};

using HybridStated = HybridState<double>;

/// reg (x) w, with A[q][k] = reg[q] * w[k].
template <typename Scalar>
HybridState<Scalar> lift(const RegisterState<Scalar>& reg, const DyadicWave<Scalar>& w, const Limits& limits = {}) {
  detail::check_entries(static_cast<std::int64_t>(reg.dim()) * w.cells(), limits);
  return {reg.n_qubits(), w.level(), w.offset(), reg.amps() * w.coeffs().transpose()};
}

template <typename Scalar>
HybridState<Scalar> apply_single_qubit(const HybridState<Scalar>& h, int q, const SingleQubitGate<Scalar>& gate) {
  detail::check_qubit(q, h.n_qubits());
  auto amps = h.amps();
  detail::apply_gate_rows(amps, q, gate.matrix());
  return {h.n_qubits(), h.level(), h.offset(), std::move(amps)};
}

template <typename Scalar>
HybridState<Scalar> apply_permutation(const HybridState<Scalar>& h, const BasisPermutation& p) {
  return {h.n_qubits(), h.level(), h.offset(), detail::permute_rows(h.amps(), p)};
}

/// Rows with bit q set are translated by t units; the others are untouched.
template <typename Scalar>
HybridState<Scalar> cond_translate(const HybridState<Scalar>& h, int q, std::int64_t t, const Limits& limits = {}) {
  detail::check_qubit(q, h.n_qubits());
  const std::int64_t shift = detail::shifted_cells(t, h.level());
  const std::int64_t lo = std::min(h.begin_cell(), h.begin_cell() + shift);
  const std::int64_t hi = std::max(h.end_cell(), h.end_cell() + shift);
  detail::check_entries(static_cast<std::int64_t>(h.rows()) * (hi - lo), limits);
  typename HybridState<Scalar>::Table out = HybridState<Scalar>::Table::Zero(h.rows(), hi - lo);
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    const std::int64_t start = h.begin_cell() + ((r & bit) ? shift : 0) - lo;
    out.row(r).segment(start, h.cells()) = h.amps().row(r);
  }
  return {h.n_qubits(), h.level(), lo, std::move(out)};
}

namespace detail {

inline bool flips_cell(std::int64_t g, int level, FlipVariant variant) {
  const std::int64_t unit = std::int64_t{1} << level;
  switch (variant) {
    case FlipVariant::OutsideUnit:
      return g < 0 || g >= unit;
    case FlipVariant::InsideOneTwo:
      return g >= unit && g < 2 * unit;
  }
  return false;
}

template <typename Derived>
void swap_rows_in_column(Eigen::MatrixBase<Derived>& m, Eigen::Index col, int q) {
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (!(r & bit)) std::swap(m(r, col), m(r | bit, col));
  }
}

}  // namespace detail

/// X on qubit q, cell by cell, wherever the variant's interval condition holds.
template <typename Scalar>
HybridState<Scalar> cond_flip(const HybridState<Scalar>& h, int q, FlipVariant variant = FlipVariant::OutsideUnit) {
  detail::check_qubit(q, h.n_qubits());
  auto amps = h.amps();
  for (Eigen::Index k = 0; k < amps.cols(); ++k) {
    if (detail::flips_cell(h.begin_cell() + k, h.level(), variant)) detail::swap_rows_in_column(amps, k, q);
  }
  return {h.n_qubits(), h.level(), h.offset(), std::move(amps)};
}

template <typename Scalar>
HybridState<Scalar> squeeze_all(const HybridState<Scalar>& h, const Limits& limits = {}) {
  detail::check_level(h.level() + 1, limits);
  return {h.n_qubits(), h.level() + 1, h.offset(), std::sqrt(Scalar(2)) * h.amps()};
}

template <typename Scalar>
HybridState<Scalar> tft(const HybridState<Scalar>& h, int q, FlipVariant variant = FlipVariant::OutsideUnit,
                        const Limits& limits = {}) {
  return cond_translate(cond_flip(cond_translate(h, q, 1, limits), q, variant), q, -1, limits);
}

namespace detail {

template <typename Scalar>
void require_unit_support(const HybridState<Scalar>& h, const char* op) {
  const std::int64_t unit = std::int64_t{1} << h.level();
  if (h.begin_cell() >= 0 && h.end_cell() <= unit) return;
  std::string msg = std::string(op) + ": CV support must lie in [0,1); nonzero cells outside it at level " +
                    std::to_string(h.level()) + ":";
  auto describe = [&](std::int64_t a, std::int64_t b) {
    msg += " [" + std::to_string(a) + "," + std::to_string(b) + ") (x in [" +
           std::to_string(std::ldexp(static_cast<double>(a), -h.level())) + "," +
           std::to_string(std::ldexp(static_cast<double>(b), -h.level())) + "))";
  };
  if (h.begin_cell() < 0) describe(h.begin_cell(), std::min<std::int64_t>(0, h.end_cell()));
  if (h.end_cell() > unit) describe(std::max(unit, h.begin_cell()), h.end_cell());
  throw ContractError(msg);
}

}  // namespace detail

/// Resets qubit q to |0> and records its amplitudes in the CV mode. Requires the
/// CV support to lie in [0,1); raises ContractError naming the offending cells otherwise.
template <typename Scalar>
HybridState<Scalar> erase(const HybridState<Scalar>& h, int q, const Limits& limits = {}) {
  detail::check_qubit(q, h.n_qubits());
  detail::require_unit_support(h, "erase");
  detail::check_level(h.level() + 1, limits);
  return squeeze_all(tft(h, q, FlipVariant::OutsideUnit, limits), limits);
}

template <typename Scalar>
struct ErasureStep {
  int qubit = 0;
  // Applied to `qubit` right before it is erased; lets one physical qubit carry a
  // fresh value into every step.
  std::optional<SingleQubitGate<Scalar>> prepare;
};

template <typename Scalar>
struct ErasureRecord {
  int step = 0;
  int qubit = 0;
  int level = 0;
  Scalar norm2 = 0;
  Scalar ancilla_residual = 0;
  HybridState<Scalar> state;
};

template <typename Scalar>
struct ErasureRun {
  HybridState<Scalar> state;
  std::vector<ErasureRecord<Scalar>> trace;
};

template <typename Scalar>
ErasureRun<Scalar> erase_sequence(const HybridState<Scalar>& h, std::span<const ErasureStep<Scalar>> steps,
                                  const Limits& limits = {}) {
  ErasureRun<Scalar> run{h, {}};
  run.trace.reserve(steps.size());
  int index = 0;
  for (const auto& step : steps) {
    if (step.prepare) run.state = apply_single_qubit(run.state, step.qubit, *step.prepare);
    run.state = erase(run.state, step.qubit, limits);
    ++index;
    run.trace.push_back(
        {index, step.qubit, run.state.level(), run.state.norm2(), run.state.one_weight(step.qubit), run.state});
  }
  return run;
}

template <typename Scalar>
ErasureRun<Scalar> erase_sequence(const HybridState<Scalar>& h, std::span<const int> qubits,
                                  const Limits& limits = {}) {
  std::vector<ErasureStep<Scalar>> steps;
  steps.reserve(qubits.size());
  for (int q : qubits) steps.push_back({q, std::nullopt});
  return erase_sequence(h, std::span<const ErasureStep<Scalar>>(steps), limits);
}

template <typename Scalar>
using AmplitudePair = std::pair<Complex<Scalar>, Complex<Scalar>>;

/// Closed form of repeated erasure starting from `base` (supported in [0,1), level l0).
/// After n steps the wave lives at level l0 + n and cell k has value
///   2^(n/2) * prod_i c_i(bit_(i-1)(k >> l0)) * base[k mod 2^l0],
/// with c_i(0) = alpha_i, c_i(1) = beta_i: the most recent step owns the most
/// significant binary digit.
template <typename Scalar>
DyadicWave<Scalar> tensor_oracle(std::span<const AmplitudePair<Scalar>> pairs,
                                 const DyadicWave<Scalar>& base = indicator_unit<Scalar>(0),
                                 const Limits& limits = {}) {
  const int l0 = base.level();
  if (base.begin_cell() < 0 || base.end_cell() > (std::int64_t{1} << l0)) {
    throw ContractError("tensor_oracle: base wave must be supported in [0,1)");
  }
  const int n = static_cast<int>(pairs.size());
  const int level = l0 + n;
  detail::check_level(level, limits);
  detail::check_entries(std::int64_t{1} << level, limits);
  const Eigen::Index cells = Eigen::Index{1} << level;
  const Eigen::Index base_cells = Eigen::Index{1} << l0;
  const Scalar scale = std::pow(Scalar(2), Scalar(n) / 2);
  typename DyadicWave<Scalar>::Coeffs c(cells);
  for (Eigen::Index k = 0; k < cells; ++k) {
    const Eigen::Index digits = k >> l0;
    Complex<Scalar> v = scale * base.cell_value(k & (base_cells - 1));
    for (int i = 0; i < n; ++i) v *= ((digits >> i) & 1) ? pairs[i].second : pairs[i].first;
    c(k) = v;
  }
  return {level, 0, std::move(c)};
}

/// Partial trace over the CV mode and the qubits not in `keep`.
template <typename Scalar>
DensityMatrix<Scalar> hybrid_reduced_density(const HybridState<Scalar>& h, std::span<const int> keep) {
  return detail::reduce_columns<Scalar>(h.amps(), h.n_qubits(), keep, std::ldexp(Scalar(1), -h.level()));
}

// ---------------------------------------------------------------------------
// Grid backend. Same operators on a table of sampled rows; used to cross-check
// the dyadic backend and to realize translation in its exp(-i p) form.

enum class TranslationMethod { Shift, Spectral };

template <typename Scalar>
class GridHybrid {
 public:
  using Table = MatrixXc<Scalar>;

  GridHybrid(int n_qubits, GridGeometry<Scalar> geometry, Table amps)
      : n_qubits_(n_qubits), geometry_(geometry), amps_(std::move(amps)) {
    if (n_qubits_ < 0 || n_qubits_ > kMaxRegisterQubits) throw ResourceError("hybrid register too large");
    if (amps_.rows() != (Eigen::Index{1} << n_qubits_) || amps_.cols() != geometry_.size()) {
      throw ValidationError("grid hybrid table has the wrong shape");
    }
  }

  int n_qubits() const { return n_qubits_; }
  const GridGeometry<Scalar>& geometry() const { return geometry_; }
  const Table& amps() const { return amps_; }
  Scalar norm2() const { return geometry_.h() * amps_.squaredNorm(); }
  GridWave<Scalar> row_wave(BasisIndex q) const {
    return {geometry_, amps_.row(static_cast<Eigen::Index>(q)).transpose()};
  }
  Scalar one_weight(int q) const {
    detail::check_qubit(q, n_qubits_);
    Scalar acc = 0;
    for (Eigen::Index r = 0; r < amps_.rows(); ++r) {
      if ((r >> q) & 1) acc += amps_.row(r).squaredNorm();
    }
    return geometry_.h() * acc;
  }

 private:
  int n_qubits_;
  GridGeometry<Scalar> geometry_;
  Table amps_;
};

using GridHybridd = GridHybrid<double>;

template <typename Scalar>
GridHybrid<Scalar> lift(const RegisterState<Scalar>& reg, const GridWave<Scalar>& g) {
  return {reg.n_qubits(), g.geometry(), reg.amps() * g.samples().transpose()};
}

template <typename Scalar>
GridHybrid<Scalar> apply_single_qubit(const GridHybrid<Scalar>& g, int q, const SingleQubitGate<Scalar>& gate) {
  detail::check_qubit(q, g.n_qubits());
  auto amps = g.amps();
  detail::apply_gate_rows(amps, q, gate.matrix());
  return {g.n_qubits(), g.geometry(), std::move(amps)};
}

/// Samples every row of a dyadic hybrid on the grid.
template <typename Scalar>
GridHybrid<Scalar> to_grid(const HybridState<Scalar>& h, const GridGeometry<Scalar>& geom) {
  typename GridHybrid<Scalar>::Table amps(h.rows(), geom.size());
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    amps.row(r) = sample_dyadic(h.row_wave(static_cast<BasisIndex>(r)), geom).samples().transpose();
  }
  return {h.n_qubits(), geom, std::move(amps)};
}

namespace detail {

// Spectral translation leaves round-off across the whole window; support checks
// ignore samples below this fraction of the largest one.
template <typename Scalar>
Scalar noise_floor(const MatrixXc<Scalar>& amps) {
  return Scalar(1e-12) * amps.cwiseAbs().maxCoeff();
}

}  // namespace detail

template <typename Scalar>
GridHybrid<Scalar> cond_translate(const GridHybrid<Scalar>& g, int q, std::int64_t t,
                                  TranslationMethod method = TranslationMethod::Shift) {
  detail::check_qubit(q, g.n_qubits());
  const auto& geom = g.geometry();
  const Eigen::Index n = geom.size();
  const std::int64_t s = t * geom.per_unit();
  auto amps = g.amps();
  const Eigen::Index bit = Eigen::Index{1} << q;
  const Scalar floor = detail::noise_floor(amps);
  for (Eigen::Index r = 0; r < amps.rows(); ++r) {
    if (!(r & bit)) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(amps(r, j)) > floor && (j + s < 0 || j + s >= n)) {
        throw DomainError("conditional translation would wrap support at x = " + std::to_string(geom.x(j)) +
                          " around the periodic window");
      }
    }
    GridWave<Scalar> row(geom, amps.row(r).transpose());
    row = method == TranslationMethod::Shift ? translate_shift(row, t) : translate_spectral(row, Scalar(t));
    amps.row(r) = row.samples().transpose();
  }
  return {g.n_qubits(), geom, std::move(amps)};
}

template <typename Scalar>
GridHybrid<Scalar> cond_flip(const GridHybrid<Scalar>& g, int q, FlipVariant variant = FlipVariant::OutsideUnit) {
  detail::check_qubit(q, g.n_qubits());
  const auto& geom = g.geometry();
  const Eigen::Index j0 = geom.origin_index();
  // Sample j lies in cell (j - j0) of width h; with h = 2^-m that is a dyadic cell.
  const std::int64_t unit = geom.per_unit();
  auto amps = g.amps();
  for (Eigen::Index j = 0; j < amps.cols(); ++j) {
    const std::int64_t rel = j - j0;
    const bool flip = variant == FlipVariant::OutsideUnit ? (rel < 0 || rel >= unit) : (rel >= unit && rel < 2 * unit);
    if (flip) detail::swap_rows_in_column(amps, j, q);
  }
  return {g.n_qubits(), geom, std::move(amps)};
}

template <typename Scalar>
GridHybrid<Scalar> squeeze_all(const GridHybrid<Scalar>& g) {
  auto amps = g.amps();
  for (Eigen::Index r = 0; r < amps.rows(); ++r) {
    amps.row(r) = squeeze_resample(GridWave<Scalar>(g.geometry(), amps.row(r).transpose())).samples().transpose();
  }
  return {g.n_qubits(), g.geometry(), std::move(amps)};
}

template <typename Scalar>
GridHybrid<Scalar> tft(const GridHybrid<Scalar>& g, int q, FlipVariant variant = FlipVariant::OutsideUnit,
                       TranslationMethod method = TranslationMethod::Shift) {
  return cond_translate(cond_flip(cond_translate(g, q, 1, method), q, variant), q, -1, method);
}

template <typename Scalar>
GridHybrid<Scalar> erase(const GridHybrid<Scalar>& g, int q, TranslationMethod method = TranslationMethod::Shift) {
  detail::check_qubit(q, g.n_qubits());
  const auto& geom = g.geometry();
  const Eigen::Index j0 = geom.origin_index();
  const std::int64_t unit = geom.per_unit();
  const Scalar floor = detail::noise_floor(g.amps());
  for (Eigen::Index j = 0; j < geom.size(); ++j) {
    const std::int64_t rel = j - j0;
    if (rel >= 0 && rel < unit) continue;
    if (g.amps().col(j).cwiseAbs().maxCoeff() > floor) {
      throw ContractError("erase: CV support must lie in [0,1); nonzero sample at x = " + std::to_string(geom.x(j)));
    }
  }
  return squeeze_all(tft(g, q, FlipVariant::OutsideUnit, method));
}

/// Row-by-row comparison of a grid hybrid against a dyadic one; l2_err is the
/// joint L2 distance over all rows.
template <typename Scalar>
ErrorReport<Scalar> compare_to_dyadic(const GridHybrid<Scalar>& g, const HybridState<Scalar>& h) {
  if (g.n_qubits() != h.n_qubits()) throw DomainError("qubit counts differ");
  ErrorReport<Scalar> rep;
  Scalar sum = 0;
  for (Eigen::Index r = 0; r < h.rows(); ++r) {
    const auto e = compare_to_dyadic(g.row_wave(static_cast<BasisIndex>(r)), h.row_wave(static_cast<BasisIndex>(r)));
    rep.max_abs_err = std::max(rep.max_abs_err, e.max_abs_err);
    sum += e.l2_err * e.l2_err;
  }
  rep.l2_err = std::sqrt(sum);
  return rep;
}

}  // namespace qhist
