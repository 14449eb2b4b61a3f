// Copyright 2026 The pbitsim Authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "pbitsim/graph.hpp"
#include "pbitsim/rng.hpp"

namespace pbitsim {

using Spin = std::int8_t;
using SpinState = std::vector<Spin>;

/// Sparse Ising problem: couplings J per graph edge and a bias h per node.
///
/// Energy convention: E(m) = -sum_{i<j} J_ij m_i m_j - sum_i h_i m_i, under
/// which the p-bit rule P(m_i = +1) = (1 + tanh(beta I_i)) / 2 samples the
/// exact Gibbs conditional.
class IsingModel {
 public:
  IsingModel() = default;
  IsingModel(Graph graph, std::vector<double> couplings, std::vector<double> biases);

  const Graph& graph() const { return graph_; }
  std::size_t num_spins() const { return graph_.num_nodes(); }
  std::span<const double> couplings() const { return couplings_; }
  std::span<const double> biases() const { return biases_; }

  /// J_ij, zero when (i, j) is not an edge.
  double coupling(NodeId i, NodeId j) const;

  /// Couplings aligned with graph().neighbors(i).
  std::span<const double> neighbor_weights(NodeId i) const {
    return {weights_.data() + graph_.adjacency_offset(i), graph_.degree(i)};
  }

 private:
  Graph graph_;
  std::vector<double> couplings_;
  std::vector<double> biases_;
  std::vector<double> weights_;
};

/// I_i = sum_j J_ij m_j + h_i over the neighbors of i.
double local_field(const IsingModel& model, std::span<const Spin> state, NodeId i);

double energy(const IsingModel& model, std::span<const Spin> state);

/// Energy change when spin i flips: 2 m_i I_i.
inline double flip_delta(const IsingModel& model, std::span<const Spin> state, NodeId i) {
  return 2.0 * state[i] * local_field(model, state, i);
}

/// Stochastic activation m = sgn(tanh(beta I) - r), r uniform on (-1, 1).
inline Spin pbit_update(double field, double beta, double r_uniform) {
  return std::tanh(beta * field) > r_uniform ? Spin{1} : Spin{-1};
}

/// Galois linear feedback shift register. Advances one word (Bits shifts)
/// per draw.
template <typename UInt, UInt Mask, int Bits = static_cast<int>(sizeof(UInt) * 8)>
class GaloisLfsr {
 public:
  explicit GaloisLfsr(UInt seed) : state_(seed) {
    if (seed == 0) throw std::invalid_argument("LFSR seed must be nonzero");
  }

  UInt state() const { return state_; }

  /// One shift.
  void step() {
    const UInt lsb = state_ & UInt{1};
    state_ = static_cast<UInt>(state_ >> 1);
    if (lsb) state_ ^= Mask;
  }

  /// Full-word refresh, then the new register contents.
  UInt next_word() {
    for (int k = 0; k < Bits; ++k) step();
    return state_;
  }

  /// Signed scaling of a fresh word onto the open interval (-1, 1).
  double next_signed() {
    const auto word = static_cast<std::int64_t>(static_cast<std::make_signed_t<UInt>>(next_word()));
    return (static_cast<double>(word) + 0.5) / static_cast<double>(UInt{1} << (Bits - 1));
  }

 private:
  UInt state_;
};

/// Maximal-length x^32 + x^22 + x^2 + x + 1.
using Lfsr32 = GaloisLfsr<std::uint32_t, 0x80200003u>;
/// Maximal-length x^8 + x^6 + x^5 + x^4 + 1; small enough to enumerate its period.
using Lfsr8 = GaloisLfsr<std::uint8_t, std::uint8_t{0xB8}>;

/// Fixed-point tanh activation.
///
/// beta*I is rounded onto a signed grid of `total_bits` bits with
/// `frac_bits` fraction bits (saturating). A lookup table maps each grid
/// code to round(tanh(x) * 2^frac_bits); the spin is +1 when that threshold
/// exceeds a uniform integer draw on [-2^frac_bits, 2^frac_bits - 1].
class FixedActivation {
 public:
  explicit FixedActivation(int total_bits = 10, int frac_bits = 7);

  int total_bits() const { return total_bits_; }
  int frac_bits() const { return frac_bits_; }
  /// Largest representable code magnitude, 2^(total_bits-1) - 1.
  std::int32_t saturation() const { return saturation_; }

  std::int32_t quantize(double beta_field) const;
  std::int32_t threshold_for_code(std::int32_t code) const {
    return table_[static_cast<std::size_t>(code + saturation_)];
  }
  std::int32_t threshold(double beta_field) const { return threshold_for_code(quantize(beta_field)); }

  Spin activate(double field, double beta, std::int32_t r_int) const {
    return threshold(beta * field) > r_int ? Spin{1} : Spin{-1};
  }

  /// Exact P(+1) over a uniform r_int for a given grid code.
  double probability_plus_for_code(std::int32_t code) const;

 private:
  int total_bits_;
  int frac_bits_;
  std::int32_t saturation_;
  std::vector<std::int32_t> table_;
};

enum class RngKind { SplitMix, Lfsr };

/// One independent random stream per p-bit.
class PbitRandom {
 public:
  PbitRandom(std::size_t num_pbits, std::uint64_t seed, RngKind kind = RngKind::SplitMix);

  RngKind kind() const { return kind_; }

  /// Uniform on the open interval (-1, 1). Consumes one word of stream i.
  double uniform_signed(NodeId i);

  /// Uniform integer on [-2^frac_bits, 2^frac_bits - 1]. Consumes one word of stream i.
  std::int32_t uniform_int(NodeId i, int frac_bits);

 private:
  std::uint64_t next_word(NodeId i, int& bits);

  RngKind kind_;
  std::vector<std::uint64_t> state_;
};

/// Float (tanh) or fixed-point activation, drawing from a per-p-bit stream.
struct Activation {
  bool fixed_point = false;
  FixedActivation table{};

  Spin operator()(double field, double beta, PbitRandom& rng, NodeId i) const {
    if (fixed_point) return table.activate(field, beta, rng.uniform_int(i, table.frac_bits()));
    return pbit_update(field, beta, rng.uniform_signed(i));
  }
};

}  // namespace pbitsim
