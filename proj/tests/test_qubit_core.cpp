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

#include <cmath>
#include <vector>

#include "qhist/qubit_core.hpp"
#include "qhist/random.hpp"

using namespace qhist;
using C = std::complex<double>;

namespace {

RegisterStated make(int n, std::vector<C> v) {
  RegisterStated::Amplitudes a(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) a(static_cast<Eigen::Index>(i)) = v[i];
  return {n, a};
}

double max_diff(const RegisterStated& a, const RegisterStated& b) {
  return (a.amps() - b.amps()).cwiseAbs().maxCoeff();
}

const double r2 = 1 / std::sqrt(2.0);

}  // namespace

TEST_CASE("basis_state") {
  CHECK(max_diff(basis_state<double>(1, 0), make(1, {1, 0})) == 0);
  CHECK(max_diff(basis_state<double>(2, 3), make(2, {0, 0, 0, 1})) == 0);
  const auto s = basis_state<double>(3, 5);
  CHECK(s.dim() == 8);
  CHECK(s.amps()(5) == C(1));
  CHECK(s.amps().cwiseAbs().sum() == 1);
  CHECK_THROWS_AS(basis_state<double>(2, 4), DomainError);
}

TEST_CASE("register construction checks length and finiteness") {
  CHECK_THROWS_AS(make(2, {1, 0, 0}), ValidationError);
  CHECK_THROWS_AS(make(1, {std::nan(""), 0}), ValidationError);
}

TEST_CASE("apply_single_qubit") {
  CHECK(max_diff(apply_single_qubit(basis_state<double>(1, 0), 0, SingleQubitGate<double>::X()),
                 basis_state<double>(1, 1)) == 0);
  CHECK(max_diff(apply_single_qubit(basis_state<double>(1, 0), 0, SingleQubitGate<double>::H()), make(1, {r2, r2})) <
        1e-16);
  // X on qubit 0 of (|00> + |11>)/sqrt2 gives (|01> + |10>)/sqrt2.
  const auto bell = make(2, {r2, 0, 0, r2});
  CHECK(max_diff(apply_single_qubit(bell, 0, SingleQubitGate<double>::X()), make(2, {0, r2, r2, 0})) == 0);

  CHECK_THROWS_AS(apply_single_qubit(bell, 2, SingleQubitGate<double>::X()), DomainError);
  Matrix2c<double> bad;
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(SingleQubitGate<double>{bad}, ValidationError);
  CHECK_THROWS_AS(SingleQubitGate<double>::preparing(0.6, 0.7), ContractError);
}

TEST_CASE("preparing gate maps |0> to the requested qubit") {
  const C a(0.6, 0.0), b(0.0, 0.8);
  const auto s = apply_single_qubit(basis_state<double>(1, 0), 0, SingleQubitGate<double>::preparing(a, b));
  CHECK(std::abs(s.amps()(0) - a) < 1e-16);
  CHECK(std::abs(s.amps()(1) - b) < 1e-16);
}

TEST_CASE("apply_permutation") {
  const auto s = make(1, {C(0.6), C(0, 0.8)});
  CHECK(max_diff(apply_permutation(s, BasisPermutation::identity(2)), s) == 0);
  CHECK(max_diff(apply_permutation(s, BasisPermutation({1, 0})), make(1, {C(0, 0.8), C(0.6)})) == 0);
  // CNOT with control qubit 1, target qubit 0: |10> (index 2) -> |11> (index 3).
  const BasisPermutation cnot({0, 1, 3, 2});
  CHECK(max_diff(apply_permutation(basis_state<double>(2, 2), cnot), basis_state<double>(2, 3)) == 0);

  CHECK_THROWS_AS(BasisPermutation({0, 0}), ValidationError);
  CHECK_THROWS_AS(BasisPermutation({0, 2}), ValidationError);
  CHECK_THROWS_AS(apply_permutation(s, BasisPermutation::identity(4)), DomainError);
}

TEST_CASE("reduced_density") {
  const std::vector<int> q0{0};
  auto rho = reduced_density(basis_state<double>(2, 1), q0);
  CHECK(std::abs(rho(0, 0)) == 0);
  CHECK(rho(1, 1) == C(1));

  rho = reduced_density(make(2, {r2, 0, 0, r2}), q0);
  CHECK((rho - 0.5 * DensityMatrix<double>::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);

  // (|00> + |01>)/sqrt2: qubit 0 is |+>.
  rho = reduced_density(make(2, {r2, r2, 0, 0}), q0);
  CHECK((rho - DensityMatrix<double>::Constant(2, 2, 0.5)).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(reduced_density(make(2, {r2, r2, 0, 0}), std::vector<int>{}), DomainError);
  CHECK_THROWS_AS(reduced_density(make(2, {r2, r2, 0, 0}), std::vector<int>{0, 0}), DomainError);
  CHECK_THROWS_AS(reduced_density(make(2, {r2, r2, 0, 0}), std::vector<int>{2}), DomainError);
}

TEST_CASE("reduced_density orders kept qubits as given") {
  // |q1 q0> = |10>; keeping {1, 0} puts qubit 1 in the low bit -> index 1.
  const auto rho = reduced_density(basis_state<double>(2, 2), std::vector<int>{1, 0});
  CHECK(rho(1, 1) == C(1));
}

TEST_CASE("purity") {
  DensityMatrix<double> pure = DensityMatrix<double>::Zero(2, 2);
  pure(0, 0) = 1;
  CHECK(purity(pure) == 1.0);
  CHECK(purity(0.5 * DensityMatrix<double>::Identity(2, 2)) == 0.5);
  DensityMatrix<double> d = DensityMatrix<double>::Zero(2, 2);
  d(0, 0) = 0.25;
  d(1, 1) = 0.75;
  CHECK(purity(d) == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("property: unitary and permutation application preserve the norm") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    const int n = static_cast<int>(rng.integer(1, 6));
    const auto s = random_register(rng, n);
    const auto [a, b] = rng.qubit_pair();
    const auto g = SingleQubitGate<double>::preparing(a, b);
    const int q = static_cast<int>(rng.integer(0, n - 1));
    CHECK(std::abs(apply_single_qubit(s, q, g).norm2() - 1) <= 1e-12);

    std::vector<BasisIndex> m(static_cast<std::size_t>(s.dim()));
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = i;
    for (std::size_t i = m.size(); i > 1; --i) std::swap(m[i - 1], m[static_cast<std::size_t>(rng.integer(0, i - 1))]);
    const BasisPermutation p(m);
    const auto permuted = apply_permutation(s, p);
    CHECK(std::abs(permuted.norm2() - 1) <= 1e-12);
    CHECK(max_diff(apply_permutation(permuted, p.inverse()), s) == 0);
  }
}

TEST_CASE("property: reducing onto every qubit gives the pure projector") {
  Rng rng(12);
  for (int t = 0; t < 20; ++t) {
    const int n = static_cast<int>(rng.integer(1, 5));
    const auto s = random_register(rng, n);
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int q = 0; q < n; ++q) all[static_cast<std::size_t>(q)] = q;
    const auto rho = reduced_density(s, all);
    CHECK((rho - s.amps() * s.amps().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(std::abs(purity(rho) - 1) <= 1e-12);
    CHECK(is_valid_density(rho));
    const auto marginal = reduced_density(s, std::vector<int>{0});
    CHECK(is_valid_density(marginal));
    CHECK(purity(marginal) >= 0.5 - 1e-10);
  }
}

TEST_CASE("tensor puts the first factor on the low qubits") {
  const auto s = tensor(basis_state<double>(1, 1), basis_state<double>(2, 2));
  CHECK(s.n_qubits() == 3);
  CHECK(s.amps()(1 + 2 * 2) == C(1));
}
