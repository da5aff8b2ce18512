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

// Sampled wavefunctions on a periodic uniform grid (hbar = 1).
//
// Sample j stands for psi(x_min + j h). The step h must be 1/M for an integer M
// so that integer translations are exact index shifts, and N must be a power of
// two for the spectral transforms.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qhist/cv_dyadic.hpp"
#include "qhist/errors.hpp"
#include "qhist/qubit_core.hpp"

namespace qhist {

template <typename Scalar>
class GridGeometry {
 public:
  GridGeometry(Scalar x_min, Scalar h, Eigen::Index n) : x_min_(x_min), h_(h), n_(n) {
    if (n_ < 2 || (n_ & (n_ - 1)) != 0) {
      throw ConfigError("grid size must be a power of two >= 2, got " + std::to_string(n_));
    }
    if (!(h_ > 0) || !std::isfinite(h_)) throw ConfigError("grid step must be positive");
    if (!std::isfinite(x_min_)) throw ConfigError("grid origin must be finite");
    const Scalar inv = std::round(1 / h_);
    if (inv >= 1 && inv * h_ == Scalar(1)) per_unit_ = static_cast<std::int64_t>(inv);
  }

  /// Window [x_min, x_max) covered by n samples.
  static GridGeometry window(Scalar x_min, Scalar x_max, Eigen::Index n) {
    if (!(x_max > x_min)) throw ConfigError("grid window needs x_min < x_max");
    return GridGeometry(x_min, (x_max - x_min) / static_cast<Scalar>(n), n);
  }

  Scalar x_min() const { return x_min_; }
  Scalar x_max() const { return x_min_ + h_ * static_cast<Scalar>(n_); }
  Scalar h() const { return h_; }
  Eigen::Index size() const { return n_; }
  /// Samples per unit length. Integer translations, the unit-interval flip and
  /// erasure need 1/h to be an integer; other operations accept any step.
  std::int64_t per_unit() const {
    if (per_unit_ == 0) throw ConfigError("1/h must be a positive integer (h = " + std::to_string(h_) + ")");
    return per_unit_;
  }
  Scalar x(Eigen::Index j) const { return x_min_ + h_ * static_cast<Scalar>(j); }

  /// Index of the sample at x = 0; the window must contain 0 on a sample.
  Eigen::Index origin_index() const {
    const Scalar j0 = -x_min_ / h_;
    if (j0 != std::round(j0) || j0 < 0 || j0 >= static_cast<Scalar>(n_)) {
      throw ConfigError("grid window must contain x = 0 on a sample point");
    }
    return static_cast<Eigen::Index>(j0);
  }

  friend bool operator==(const GridGeometry& a, const GridGeometry& b) {
    return a.x_min_ == b.x_min_ && a.h_ == b.h_ && a.n_ == b.n_;
  }

 private:
  Scalar x_min_;
  Scalar h_;
  Eigen::Index n_;
  std::int64_t per_unit_ = 0;  // 0 when 1/h is not an integer
};

template <typename Scalar>
class GridWave {
 public:
  using Samples = VectorXc<Scalar>;

  GridWave(GridGeometry<Scalar> geometry, Samples samples) : geometry_(geometry), samples_(std::move(samples)) {
    if (samples_.size() != geometry_.size()) {
      throw ConfigError("grid wave needs " + std::to_string(geometry_.size()) + " samples, got " +
                        std::to_string(samples_.size()));
    }
    if (!samples_.allFinite()) throw ValidationError("grid samples must be finite");
  }

  const GridGeometry<Scalar>& geometry() const { return geometry_; }
  const Samples& samples() const { return samples_; }
  Eigen::Index size() const { return samples_.size(); }
  Scalar h() const { return geometry_.h(); }
  Scalar x(Eigen::Index j) const { return geometry_.x(j); }

 private:
  GridGeometry<Scalar> geometry_;
  Samples samples_;
};

using GridGeometryd = GridGeometry<double>;
using GridWaved = GridWave<double>;

/// Riemann-sum norm h * sum |psi_j|^2.
template <typename Scalar>
Scalar norm2(const GridWave<Scalar>& g) {
  return g.h() * g.samples().squaredNorm();
}

template <typename Scalar>
GridWave<Scalar> sample_function(const std::function<Complex<Scalar>(Scalar)>& f, const GridGeometry<Scalar>& geom) {
  typename GridWave<Scalar>::Samples s(geom.size());
  for (Eigen::Index j = 0; j < geom.size(); ++j) s(j) = f(geom.x(j));
  return {geom, std::move(s)};
}

template <typename Scalar>
GridWave<Scalar> sample_function(const std::function<Complex<Scalar>(Scalar)>& f, Scalar x_min, Scalar h,
                                 Eigen::Index n) {
  return sample_function(f, GridGeometry<Scalar>(x_min, h, n));
}

template <typename Scalar>
GridWave<Scalar> sample_dyadic(const DyadicWave<Scalar>& w, const GridGeometry<Scalar>& geom) {
  return sample_function<Scalar>([&w](Scalar x) { return w.value_at(x); }, geom);
}

namespace detail {

template <typename Derived>
typename Derived::PlainObject circular_shift(const Eigen::MatrixBase<Derived>& v, std::int64_t s) {
  const std::int64_t n = v.size();
  const std::int64_t k = ((s % n) + n) % n;
  typename Derived::PlainObject out(v.size());
  out.tail(n - k) = v.head(n - k);
  out.head(k) = v.tail(k);
  return out;
}

// Standard periodic wavenumbers 2 pi m / (N h), m in [-N/2, N/2).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> wavenumbers(const GridGeometry<Scalar>& geom) {
  const Eigen::Index n = geom.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> k(n);
  const Scalar base = 2 * std::numbers::pi_v<Scalar> / (static_cast<Scalar>(n) * geom.h());
  for (Eigen::Index m = 0; m < n; ++m) k(m) = base * static_cast<Scalar>(m < n / 2 ? m : m - n);
  return k;
}

}  // namespace detail

/// Circular shift by t/h samples: psi(x) -> psi(x - t) on the periodic window.
template <typename Scalar>
GridWave<Scalar> translate_shift(const GridWave<Scalar>& g, std::int64_t t) {
  return {g.geometry(), detail::circular_shift(g.samples(), t * g.geometry().per_unit())};
}

/// exp(-i p a) applied through the discrete Fourier transform.
template <typename Scalar>
GridWave<Scalar> translate_spectral(const GridWave<Scalar>& g, Scalar a) {
  Eigen::FFT<Scalar> fft;
  typename GridWave<Scalar>::Samples spectrum;
  fft.fwd(spectrum, g.samples());
  const auto k = detail::wavenumbers(g.geometry());
  for (Eigen::Index m = 0; m < spectrum.size(); ++m) spectrum(m) *= std::polar(Scalar(1), -k(m) * a);
  typename GridWave<Scalar>::Samples out;
  fft.inv(out, spectrum);
  return {g.geometry(), std::move(out)};
}

/// Keeps samples with x in [a, b).
template <typename Scalar>
GridWave<Scalar> project_grid(const GridWave<Scalar>& g, Scalar a, Scalar b) {
  if (!(a < b)) throw DomainError("projection interval needs a < b");
  auto s = g.samples();
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    const Scalar x = g.x(j);
    if (!(x >= a && x < b)) s(j) = Complex<Scalar>(0);
  }
  return {g.geometry(), std::move(s)};
}

/// psi(x) -> sqrt(2) psi(2x) on the same window by decimation: output sample at x
/// reads the input sample at 2x. Exact for piecewise-constant input whose cells
/// span at least two samples; inputs read from outside the window count as zero.
template <typename Scalar>
GridWave<Scalar> squeeze_resample(const GridWave<Scalar>& g) {
  const auto& geom = g.geometry();
  const Eigen::Index n = geom.size();
  const Eigen::Index j0 = geom.origin_index();
  typename GridWave<Scalar>::Samples out = GridWave<Scalar>::Samples::Zero(n);
  const Scalar r2 = std::sqrt(Scalar(2));
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index src = 2 * j - j0;
    if (src >= 0 && src < n) out(j) = r2 * g.samples()(src);
  }
  // x -> x/2 maps the window into itself when it contains 0, so every nonzero
  // input sample lands on an output position inside the window.
  for (Eigen::Index s = 0; s < n; ++s) {
    if (g.samples()(s) == Complex<Scalar>(0)) continue;
    const Eigen::Index target = j0 + (s - j0 >= 0 ? (s - j0) / 2 : -((j0 - s + 1) / 2));
    if (target < 0 || target >= n) {
      throw DomainError("squeeze: support at x = " + std::to_string(g.x(s)) + " escapes the grid window");
    }
  }
  return {geom, std::move(out)};
}

/// Spectral momentum operator P = -i d/dx as a dense Hermitian matrix (Nyquist
/// mode dropped so P is the derivative of a real trigonometric interpolant).
template <typename Scalar>
MatrixXc<Scalar> momentum_matrix(const GridGeometry<Scalar>& geom) {
  const Eigen::Index n = geom.size();
  auto k = detail::wavenumbers(geom);
  k(n / 2) = 0;
  Eigen::FFT<Scalar> fft;
  MatrixXc<Scalar> p(n, n);
  VectorXc<Scalar> unit = VectorXc<Scalar>::Zero(n);
  VectorXc<Scalar> spectrum, column;
  for (Eigen::Index l = 0; l < n; ++l) {
    unit.setZero();
    unit(l) = 1;
    fft.fwd(spectrum, unit);
    spectrum = spectrum.cwiseProduct(k.template cast<Complex<Scalar>>());
    fft.inv(column, spectrum);
    p.col(l) = column;
  }
  return p;
}

/// Dilation generator (XP + PX)/2 on the grid; Hermitian by construction.
template <typename Scalar>
MatrixXc<Scalar> dilation_hamiltonian(const GridGeometry<Scalar>& geom) {
  const Eigen::Index n = geom.size();
  VectorXc<Scalar> xs(n);
  for (Eigen::Index j = 0; j < n; ++j) xs(j) = geom.x(j);
  const MatrixXc<Scalar> p = momentum_matrix(geom);
  MatrixXc<Scalar> gen = (xs.asDiagonal() * p + p * xs.asDiagonal()) / Scalar(2);
  MatrixXc<Scalar> herm = (gen + gen.adjoint()) / Scalar(2);
  return herm;
}

/// exp(i ln2 (XP + PX)/2) applied to g, i.e. an approximation of sqrt(2) psi(2x).
/// Accurate only for smooth input supported well inside the window; this is not checked.
template <typename Scalar>
GridWave<Scalar> dilation_generator(const GridWave<Scalar>& g) {
  if (g.size() > 4096) throw ResourceError("dilation_generator builds a dense N x N generator; N <= 4096");
  const MatrixXc<Scalar> gen = dilation_hamiltonian(g.geometry());
  Eigen::SelfAdjointEigenSolver<MatrixXc<Scalar>> es(gen);
  const Scalar ln2 = std::numbers::ln2_v<Scalar>;
  VectorXc<Scalar> phases(g.size());
  for (Eigen::Index m = 0; m < g.size(); ++m) phases(m) = std::polar(Scalar(1), ln2 * es.eigenvalues()(m));
  VectorXc<Scalar> coeffs = es.eigenvectors().adjoint() * g.samples();
  VectorXc<Scalar> out = es.eigenvectors() * phases.cwiseProduct(coeffs);
  return {g.geometry(), std::move(out)};
}

template <typename Scalar>
struct ErrorReport {
  Scalar max_abs_err = 0;
  Scalar l2_err = 0;
};

/// Pointwise comparison of grid samples against w (half-open cells), over the window.
template <typename Scalar>
ErrorReport<Scalar> compare_to_dyadic(const GridWave<Scalar>& g, const DyadicWave<Scalar>& w) {
  if (g.h() > w.cell_width()) {
    throw DomainError("grid step must not exceed the dyadic cell width");
  }
  ErrorReport<Scalar> rep;
  Scalar sum = 0;
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    const Scalar e = std::abs(g.samples()(j) - w.value_at(g.x(j)));
    rep.max_abs_err = std::max(rep.max_abs_err, e);
    sum += e * e;
  }
  rep.l2_err = std::sqrt(g.h() * sum);
  return rep;
}

}  // namespace qhist
