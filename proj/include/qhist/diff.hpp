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

// Pointwise distances between dyadic objects stored at possibly different
// levels and offsets. Both sides are read on the finer grid over the union of
// their supports.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "qhist/cv_dyadic.hpp"
#include "qhist/erasure.hpp"

namespace qhist {

/// max_x |a(x) - b(x)|.
template <typename Scalar>
Scalar max_cell_diff(const DyadicWave<Scalar>& a, const DyadicWave<Scalar>& b) {
  const int level = std::max(a.level(), b.level());
  const int da = level - a.level();
  const int db = level - b.level();
  const std::int64_t lo = std::min(a.begin_cell() << da, b.begin_cell() << db);
  const std::int64_t hi = std::max(a.end_cell() << da, b.end_cell() << db);
  Scalar err = 0;
  for (std::int64_t g = lo; g < hi; ++g) {
    err = std::max(err, std::abs(a.cell_value(g >> da) - b.cell_value(g >> db)));
  }
  return err;
}

template <typename Scalar>
Scalar max_cell_diff(const HybridState<Scalar>& a, const HybridState<Scalar>& b) {
  if (a.n_qubits() != b.n_qubits()) return std::numeric_limits<Scalar>::infinity();
  Scalar err = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const auto q = static_cast<BasisIndex>(r);
    err = std::max(err, max_cell_diff(a.row_wave(q), b.row_wave(q)));
  }
  return err;
}

/// ||a - b||_2 in the CV L2 sense.
template <typename Scalar>
Scalar l2_diff(const DyadicWave<Scalar>& a, const DyadicWave<Scalar>& b) {
  const int level = std::max(a.level(), b.level());
  const int da = level - a.level();
  const int db = level - b.level();
  const std::int64_t lo = std::min(a.begin_cell() << da, b.begin_cell() << db);
  const std::int64_t hi = std::max(a.end_cell() << da, b.end_cell() << db);
  Scalar acc = 0;
  for (std::int64_t g = lo; g < hi; ++g) acc += std::norm(a.cell_value(g >> da) - b.cell_value(g >> db));
  return std::sqrt(std::ldexp(acc, -level));
}

}  // namespace qhist
