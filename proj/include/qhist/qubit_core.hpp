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

// Dense n-qubit registers. Basis ordering: qubit 0 is the least significant
// bit of the basis index, everywhere in the library.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhist/errors.hpp"

namespace qhist {

template <typename Scalar>
using Complex = std::complex<Scalar>;
template <typename Scalar>
using VectorXc = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixXc = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Matrix2c = Eigen::Matrix<Complex<Scalar>, 2, 2>;

/// Reduced states are plain dense Hermitian matrices.
template <typename Scalar>
using DensityMatrix = MatrixXc<Scalar>;

using BasisIndex = std::uint64_t;

inline constexpr int kMaxRegisterQubits = 24;

template <typename Scalar>
class RegisterState {
 public:
  using Amplitudes = VectorXc<Scalar>;

  RegisterState(int n_qubits, Amplitudes amps) : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (n_qubits_ < 0 || n_qubits_ > kMaxRegisterQubits) {
      throw ResourceError("register size " + std::to_string(n_qubits_) + " outside [0, " +
                          std::to_string(kMaxRegisterQubits) + "]");
    }
    if (amps_.size() != (Eigen::Index{1} << n_qubits_)) {
      throw ValidationError("register of " + std::to_string(n_qubits_) + " qubits needs " +
                            std::to_string(Eigen::Index{1} << n_qubits_) + " amplitudes, got " +
                            std::to_string(amps_.size()));
    }
    if (!amps_.allFinite()) throw ValidationError("register amplitudes must be finite");
  }

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Amplitudes& amps() const { return amps_; }
  Scalar norm2() const { return amps_.squaredNorm(); }
  bool is_normalized(Scalar tol = Scalar(1e-12)) const { return std::abs(norm2() - 1) <= tol; }

 private:
  int n_qubits_;
  Amplitudes amps_;
};

using RegisterStated = RegisterState<double>;

template <typename Scalar>
RegisterState<Scalar> basis_state(int n_qubits, BasisIndex index) {
  if (n_qubits < 0 || n_qubits > kMaxRegisterQubits) {
    throw ResourceError("register size " + std::to_string(n_qubits) + " out of range");
  }
  const auto dim = BasisIndex{1} << n_qubits;
  if (index >= dim) {
    throw DomainError("basis index " + std::to_string(index) + " out of range for " +
                      std::to_string(n_qubits) + " qubits");
  }
  typename RegisterState<Scalar>::Amplitudes amps =
      RegisterState<Scalar>::Amplitudes::Zero(static_cast<Eigen::Index>(dim));
  amps(static_cast<Eigen::Index>(index)) = Scalar(1);
  return {n_qubits, std::move(amps)};
}

/// Product state with `low` on the least significant qubits.
template <typename Scalar>
RegisterState<Scalar> tensor(const RegisterState<Scalar>& low, const RegisterState<Scalar>& high) {
  typename RegisterState<Scalar>::Amplitudes amps(low.dim() * high.dim());
  for (Eigen::Index h = 0; h < high.dim(); ++h) {
    amps.segment(h * low.dim(), low.dim()) = high.amps()(h) * low.amps();
  }
  return {low.n_qubits() + high.n_qubits(), std::move(amps)};
}

/// A 2x2 unitary, checked once when constructed.
template <typename Scalar>
class SingleQubitGate {
 public:
  explicit SingleQubitGate(const Matrix2c<Scalar>& u, Scalar tol = Scalar(1e-12)) : u_(u) {
    const Scalar err = (u_.adjoint() * u_ - Matrix2c<Scalar>::Identity()).cwiseAbs().maxCoeff();
    if (!(err <= tol)) {
      throw ValidationError("gate matrix is not unitary (max |U^dag U - I| = " + std::to_string(err) + ")");
    }
  }

  const Matrix2c<Scalar>& matrix() const { return u_; }

  static SingleQubitGate X() { return SingleQubitGate(make(0, 1, 1, 0)); }
  static SingleQubitGate Y() {
    const Complex<Scalar> i(0, 1);
    return SingleQubitGate(make(0, -i, i, 0));
  }
  static SingleQubitGate Z() { return SingleQubitGate(make(1, 0, 0, -1)); }
  static SingleQubitGate H() {
    const Scalar s = 1 / std::sqrt(Scalar(2));
    return SingleQubitGate(make(s, s, s, -s));
  }
  static SingleQubitGate S() { return SingleQubitGate(make(1, 0, 0, Complex<Scalar>(0, 1))); }
  static SingleQubitGate T() {
    const Scalar s = 1 / std::sqrt(Scalar(2));
    return SingleQubitGate(make(1, 0, 0, Complex<Scalar>(s, s)));
  }

  /// Unitary mapping |0> to alpha|0> + beta|1>.
  static SingleQubitGate preparing(Complex<Scalar> alpha, Complex<Scalar> beta, Scalar tol = Scalar(1e-12)) {
    const Scalar n2 = std::norm(alpha) + std::norm(beta);
    if (!(std::abs(n2 - 1) <= tol)) {
      throw ContractError("qubit amplitudes must satisfy |alpha|^2 + |beta|^2 = 1 (got " +
                          std::to_string(n2) + ")");
    }
    return SingleQubitGate(make(alpha, -std::conj(beta), beta, std::conj(alpha)), tol);
  }

 private:
  static Matrix2c<Scalar> make(Complex<Scalar> a, Complex<Scalar> b, Complex<Scalar> c, Complex<Scalar> d) {
    Matrix2c<Scalar> m;
    m << a, b, c, d;
    return m;
  }

  Matrix2c<Scalar> u_;
};

/// A bijection on basis indices [0, size).
class BasisPermutation {
 public:
  explicit BasisPermutation(std::vector<BasisIndex> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t i = 0; i < map_.size(); ++i) {
      const BasisIndex j = map_[i];
      if (j >= map_.size() || seen[j]) {
        throw ValidationError("basis map is not a bijection (entry " + std::to_string(i) + " -> " +
                              std::to_string(j) + ")");
      }
      seen[j] = true;
    }
  }

  static BasisPermutation identity(std::size_t size) {
    std::vector<BasisIndex> m(size);
    for (std::size_t i = 0; i < size; ++i) m[i] = i;
    return BasisPermutation(std::move(m));
  }

  std::size_t size() const { return map_.size(); }
  BasisIndex operator()(BasisIndex i) const { return map_[i]; }
  const std::vector<BasisIndex>& map() const { return map_; }

  BasisPermutation inverse() const {
    std::vector<BasisIndex> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return BasisPermutation(std::move(inv));
  }

  friend bool operator==(const BasisPermutation&, const BasisPermutation&) = default;

 private:
  std::vector<BasisIndex> map_;
};

namespace detail {

inline void check_qubit(int q, int n_qubits) {
  if (q < 0 || q >= n_qubits) {
    throw DomainError("qubit index " + std::to_string(q) + " out of range for " + std::to_string(n_qubits) +
                      " qubits");
  }
}

// Rows of `m` are basis states; columns are independent (CV cells or a single column).
template <typename Derived, typename Scalar>
void apply_gate_rows(Eigen::MatrixBase<Derived>& m, int q, const Matrix2c<Scalar>& u) {
  const Eigen::Index bit = Eigen::Index{1} << q;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    if (r & bit) continue;
    const auto lo = m.row(r).eval();
    const auto hi = m.row(r | bit).eval();
    m.row(r) = u(0, 0) * lo + u(0, 1) * hi;
    m.row(r | bit) = u(1, 0) * lo + u(1, 1) * hi;
  }
}

template <typename Derived>
typename Derived::PlainObject permute_rows(const Eigen::MatrixBase<Derived>& m, const BasisPermutation& p) {
  if (p.size() != static_cast<std::size_t>(m.rows())) {
    throw DomainError("permutation size " + std::to_string(p.size()) + " does not match dimension " +
                      std::to_string(m.rows()));
  }
  typename Derived::PlainObject out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    out.row(static_cast<Eigen::Index>(p(static_cast<BasisIndex>(r)))) = m.row(r);
  }
  return out;
}

inline std::vector<int> checked_keep(std::span<const int> keep, int n_qubits) {
  if (keep.empty()) throw DomainError("reduced density needs a nonempty set of kept qubits");
  std::vector<int> k(keep.begin(), keep.end());
  for (int q : k) check_qubit(q, n_qubits);
  auto sorted = k;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("kept qubits must be distinct");
  }
  return k;
}

// Partial trace over the qubits not in `keep` and over every column, each column
// weighted by `weight`. keep[i] becomes bit i of the reduced index.
template <typename Scalar>
DensityMatrix<Scalar> reduce_columns(const MatrixXc<Scalar>& amps, int n_qubits, std::span<const int> keep,
                                     Scalar weight) {
  const auto k = checked_keep(keep, n_qubits);
  std::vector<int> rest;
  for (int q = 0; q < n_qubits; ++q) {
    if (std::find(k.begin(), k.end(), q) == k.end()) rest.push_back(q);
  }
  const Eigen::Index dim_keep = Eigen::Index{1} << k.size();
  const Eigen::Index dim_rest = Eigen::Index{1} << rest.size();
  const Eigen::Index cols = amps.cols();
  MatrixXc<Scalar> gathered = MatrixXc<Scalar>::Zero(dim_keep, dim_rest * cols);
  for (Eigen::Index r = 0; r < amps.rows(); ++r) {
    Eigen::Index a = 0, b = 0;
    for (std::size_t i = 0; i < k.size(); ++i) a |= ((r >> k[i]) & 1) << i;
    for (std::size_t i = 0; i < rest.size(); ++i) b |= ((r >> rest[i]) & 1) << i;
    gathered.row(a).segment(b * cols, cols) = amps.row(r);
  }
  DensityMatrix<Scalar> rho = weight * (gathered * gathered.adjoint());
  return rho;
}

}  // namespace detail

template <typename Scalar>
RegisterState<Scalar> apply_single_qubit(const RegisterState<Scalar>& state, int q,
                                         const SingleQubitGate<Scalar>& gate) {
  detail::check_qubit(q, state.n_qubits());
  auto amps = state.amps();
  detail::apply_gate_rows(amps, q, gate.matrix());
  return {state.n_qubits(), std::move(amps)};
}

/// amps'[p(i)] = amps[i].
template <typename Scalar>
RegisterState<Scalar> apply_permutation(const RegisterState<Scalar>& state, const BasisPermutation& p) {
  return {state.n_qubits(), detail::permute_rows(state.amps(), p)};
}

template <typename Scalar>
DensityMatrix<Scalar> reduced_density(const RegisterState<Scalar>& state, std::span<const int> keep) {
  MatrixXc<Scalar> column = state.amps();
  return detail::reduce_columns<Scalar>(column, state.n_qubits(), keep, Scalar(1));
}

/// Tr(rho^2); for Hermitian rho this is the sum of |rho_ij|^2.
template <typename Derived>
typename Derived::RealScalar purity(const Eigen::MatrixBase<Derived>& rho) {
  return rho.cwiseAbs2().sum();
}

/// Hermitian, unit trace and positive semidefinite within the given tolerances.
template <typename Scalar>
bool is_valid_density(const DensityMatrix<Scalar>& rho, Scalar tol = Scalar(1e-12),
                      Scalar eig_tol = Scalar(1e-10)) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) return false;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(rho.trace() - Complex<Scalar>(1)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<DensityMatrix<Scalar>> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -eig_tol;
}

}  // namespace qhist
