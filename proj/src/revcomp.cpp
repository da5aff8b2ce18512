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

#include "qhist/revcomp.hpp"

#include <algorithm>
#include <regex>

#include "qhist/errors.hpp"

namespace qhist {

std::string to_string(RevMode mode) { return mode == RevMode::Xor ? "xor" : "mod_sub"; }

RevMode rev_mode_from_string(const std::string& name) {
  if (name == "xor" || name == "XOR") return RevMode::Xor;
  if (name == "mod_sub" || name == "MOD_SUB") return RevMode::ModSub;
  throw ValidationError("unknown reversible mode '" + name + "' (expected xor or mod_sub)");
}

TruthTable::TruthTable(int n_in, int m_out, std::vector<std::uint64_t> outputs)
    : n_in_(n_in), m_out_(m_out), outputs_(std::move(outputs)) {
  if (n_in_ < 0 || n_in_ > kMaxTruthTableInputs) {
    throw ValidationError("n_in must be in [0, " + std::to_string(kMaxTruthTableInputs) + "], got " +
                          std::to_string(n_in_));
  }
  if (m_out_ < 1 || m_out_ > 32) throw ValidationError("m_out must be in [1, 32], got " + std::to_string(m_out_));
  const std::uint64_t expected = std::uint64_t{1} << n_in_;
  if (outputs_.size() != expected) {
    throw ValidationError("outputs: expected " + std::to_string(expected) + " entries, got " +
                          std::to_string(outputs_.size()));
  }
  const std::uint64_t bound = std::uint64_t{1} << m_out_;
  for (std::size_t i = 0; i < outputs_.size(); ++i) {
    if (outputs_[i] >= bound) {
      throw ValidationError("outputs[" + std::to_string(i) + "]: value " + std::to_string(outputs_[i]) +
                            " does not fit in " + std::to_string(m_out_) + " bits");
    }
  }
}

TruthTable named_truth_table(const std::string& name) {
  if (name == "AND") return {2, 1, {0, 0, 0, 1}};
  if (name == "OR") return {2, 1, {0, 1, 1, 1}};
  if (name == "XOR") return {2, 1, {0, 1, 1, 0}};
  if (name == "NAND") return {2, 1, {1, 1, 1, 0}};
  if (name == "NOT") return {1, 1, {1, 0}};
  if (name == "COPY") return {1, 1, {0, 1}};
  std::smatch m;
  static const std::regex adder(R"(ADDER\((\d+)\))");
  static const std::regex constant(R"(CONST\((\d+),\s*(\d+),\s*(\d+)\))");
  if (std::regex_match(name, m, adder)) {
    const int k = std::stoi(m[1]);
    if (k < 1 || 2 * k > kMaxTruthTableInputs) throw ValidationError("ADDER width out of range: " + name);
    std::vector<std::uint64_t> out(std::uint64_t{1} << (2 * k));
    const std::uint64_t mask = (std::uint64_t{1} << k) - 1;
    for (std::uint64_t x = 0; x < out.size(); ++x) out[x] = (x & mask) + (x >> k);
    return {2 * k, k + 1, std::move(out)};
  }
  if (std::regex_match(name, m, constant)) {
    const int n = std::stoi(m[1]);
    const int mo = std::stoi(m[2]);
    if (n > kMaxTruthTableInputs) throw ValidationError("CONST input width out of range: " + name);
    return {n, mo, std::vector<std::uint64_t>(std::uint64_t{1} << n, std::stoull(m[3]))};
  }
  throw ValidationError("unknown truth table '" + name + "'");
}

ReversiblePermutation::ReversiblePermutation(int n_in, int m_out, RevMode mode, std::vector<std::uint32_t> map)
    : n_in_(n_in), m_out_(m_out), mode_(mode), map_(std::move(map)) {
  if (n_in_ < 0 || m_out_ < 1 || n_in_ + m_out_ > kMaxReversibleBits) {
    throw ResourceError("reversible lift limited to n_in + m_out <= " + std::to_string(kMaxReversibleBits));
  }
  const std::uint64_t count = std::uint64_t{1} << (n_in_ + m_out_);
  if (map_.size() != count) throw ValidationError("reversible map has the wrong size");
  const std::uint64_t xmask = (std::uint64_t{1} << n_in_) - 1;
  std::vector<bool> seen(count, false);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::uint64_t j = map_[i];
    if (j >= count || seen[j]) throw ValidationError("reversible map is not a bijection at pair index " + std::to_string(i));
    if ((j & xmask) != (i & xmask)) {
      throw ValidationError("reversible map changes the input register at pair index " + std::to_string(i));
    }
    seen[j] = true;
  }
}

std::pair<std::uint64_t, std::uint64_t> ReversiblePermutation::operator()(std::uint64_t x, std::uint64_t y) const {
  const std::uint64_t j = map_[x | (y << n_in_)];
  return {j & ((std::uint64_t{1} << n_in_) - 1), j >> n_in_};
}

std::pair<std::uint64_t, std::uint64_t> eval_forward(const TruthTable& tt, RevMode mode, std::uint64_t x,
                                                     std::uint64_t y) {
  const std::uint64_t modulus = std::uint64_t{1} << tt.m_out();
  if (x >= (std::uint64_t{1} << tt.n_in())) throw DomainError("x = " + std::to_string(x) + " out of range");
  if (y >= modulus) throw DomainError("y = " + std::to_string(y) + " out of range");
  const std::uint64_t f = tt(x);
  const std::uint64_t y2 = mode == RevMode::Xor ? (f ^ y) : ((f + modulus - y) & (modulus - 1));
  return {x, y2};
}

ReversiblePermutation build_reversible(const TruthTable& tt, RevMode mode) {
  const int bits = tt.n_in() + tt.m_out();
  if (bits > kMaxReversibleBits) {
    throw ResourceError("reversible lift limited to n_in + m_out <= " + std::to_string(kMaxReversibleBits) +
                        ", got " + std::to_string(bits));
  }
  const std::uint64_t nx = std::uint64_t{1} << tt.n_in();
  const std::uint64_t ny = std::uint64_t{1} << tt.m_out();
  std::vector<std::uint32_t> map(nx * ny);
  for (std::uint64_t y = 0; y < ny; ++y) {
    for (std::uint64_t x = 0; x < nx; ++x) {
      const auto [x2, y2] = eval_forward(tt, mode, x, y);
      map[x | (y << tt.n_in())] = static_cast<std::uint32_t>(x2 | (y2 << tt.n_in()));
    }
  }
  return {tt.n_in(), tt.m_out(), mode, std::move(map)};
}

InvolutionCheck check_involution(const ReversiblePermutation& p) {
  const auto& m = p.map();
  for (std::uint64_t i = 0; i < m.size(); ++i) {
    if (m[m[i]] != i) {
      const std::uint64_t xmask = (std::uint64_t{1} << p.n_in()) - 1;
      return {false, std::make_pair(i & xmask, i >> p.n_in())};
    }
  }
  return {};
}

BasisPermutation as_register_permutation(const ReversiblePermutation& p, std::span<const int> x_qubits,
                                         std::span<const int> y_qubits, int n_total) {
  if (n_total < 0 || n_total > kMaxRegisterQubits) throw ValidationError("register size out of range");
  if (static_cast<int>(x_qubits.size()) != p.n_in() || static_cast<int>(y_qubits.size()) != p.m_out()) {
    throw ValidationError("expected " + std::to_string(p.n_in()) + " x qubits and " + std::to_string(p.m_out()) +
                          " y qubits");
  }
  std::vector<bool> used(static_cast<std::size_t>(n_total), false);
  auto claim = [&](int q) {
    if (q < 0 || q >= n_total) throw ValidationError("qubit " + std::to_string(q) + " out of range");
    if (used[q]) throw ValidationError("qubit " + std::to_string(q) + " listed twice");
    used[q] = true;
  };
  for (int q : x_qubits) claim(q);
  for (int q : y_qubits) claim(q);

  const std::uint64_t dim = std::uint64_t{1} << n_total;
  std::vector<BasisIndex> map(dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    std::uint64_t x = 0, y = 0;
    for (std::size_t b = 0; b < x_qubits.size(); ++b) x |= ((i >> x_qubits[b]) & 1) << b;
    for (std::size_t b = 0; b < y_qubits.size(); ++b) y |= ((i >> y_qubits[b]) & 1) << b;
    const auto [x2, y2] = p(x, y);
    std::uint64_t j = i;
    for (std::size_t b = 0; b < x_qubits.size(); ++b) {
      j = (j & ~(std::uint64_t{1} << x_qubits[b])) | (((x2 >> b) & 1) << x_qubits[b]);
    }
    for (std::size_t b = 0; b < y_qubits.size(); ++b) {
      j = (j & ~(std::uint64_t{1} << y_qubits[b])) | (((y2 >> b) & 1) << y_qubits[b]);
    }
    map[i] = j;
  }
  return BasisPermutation(std::move(map));
}

}  // namespace qhist
