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

// Reversible lift of a classical function: (x, y) -> (x, f(x) (-) y), where (-)
// is bitwise XOR or subtraction modulo 2^m_out. Both choices are involutions.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qhist/qubit_core.hpp"

namespace qhist {

enum class RevMode { Xor, ModSub };

std::string to_string(RevMode mode);
RevMode rev_mode_from_string(const std::string& name);

inline constexpr int kMaxTruthTableInputs = 24;
inline constexpr int kMaxReversibleBits = 20;

class TruthTable {
 public:
  TruthTable(int n_in, int m_out, std::vector<std::uint64_t> outputs);

  int n_in() const { return n_in_; }
  int m_out() const { return m_out_; }
  std::uint64_t operator()(std::uint64_t x) const { return outputs_[x]; }
  const std::vector<std::uint64_t>& outputs() const { return outputs_; }

  friend bool operator==(const TruthTable&, const TruthTable&) = default;

 private:
  int n_in_;
  int m_out_;
  std::vector<std::uint64_t> outputs_;
};

/// Named tables: AND, OR, XOR, NAND, NOT, COPY, ADDER(k), CONST(n,m,v).
TruthTable named_truth_table(const std::string& name);

/// Bijection on pairs (x, y) indexed as x | (y << n_in), leaving x fixed.
class ReversiblePermutation {
 public:
  ReversiblePermutation(int n_in, int m_out, RevMode mode, std::vector<std::uint32_t> map);

  int n_in() const { return n_in_; }
  int m_out() const { return m_out_; }
  RevMode mode() const { return mode_; }
  std::uint64_t pair_count() const { return map_.size(); }
  std::pair<std::uint64_t, std::uint64_t> operator()(std::uint64_t x, std::uint64_t y) const;
  const std::vector<std::uint32_t>& map() const { return map_; }

 private:
  int n_in_;
  int m_out_;
  RevMode mode_;
  std::vector<std::uint32_t> map_;
};

std::pair<std::uint64_t, std::uint64_t> eval_forward(const TruthTable& tt, RevMode mode, std::uint64_t x,
                                                     std::uint64_t y);

ReversiblePermutation build_reversible(const TruthTable& tt, RevMode mode);

struct InvolutionCheck {
  bool involution = true;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> counterexample;
};

InvolutionCheck check_involution(const ReversiblePermutation& p);

/// Embeds p into an n_total-qubit register: bit i of x is qubit x_qubits[i], bit i
/// of y is qubit y_qubits[i]; every other qubit is left alone.
BasisPermutation as_register_permutation(const ReversiblePermutation& p, std::span<const int> x_qubits,
                                         std::span<const int> y_qubits, int n_total);

}  // namespace qhist
