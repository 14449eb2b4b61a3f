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

#include "pbitsim/model.hpp"

#include <algorithm>

namespace pbitsim {

IsingModel::IsingModel(Graph graph, std::vector<double> couplings, std::vector<double> biases)
    : graph_(std::move(graph)), couplings_(std::move(couplings)), biases_(std::move(biases)) {
  if (couplings_.size() != graph_.num_edges()) {
    throw std::invalid_argument("one coupling per edge required");
  }
  if (biases_.empty()) biases_.assign(graph_.num_nodes(), 0.0);
  if (biases_.size() != graph_.num_nodes()) {
    throw std::invalid_argument("one bias per node required");
  }
  const std::size_t n = graph_.num_nodes();
  std::size_t total = 0;
  for (NodeId i = 0; i < n; ++i) total += graph_.degree(i);
  weights_.reserve(total);
  for (NodeId i = 0; i < n; ++i) {
    for (auto id : graph_.edge_ids(i)) weights_.push_back(couplings_[id]);
  }
}

double IsingModel::coupling(NodeId i, NodeId j) const {
  auto id = graph_.find_edge(i, j);
  return id ? couplings_[*id] : 0.0;
}

double local_field(const IsingModel& model, std::span<const Spin> state, NodeId i) {
  const auto nb = model.graph().neighbors(i);
  const auto w = model.neighbor_weights(i);
  double field = model.biases()[i];
  for (std::size_t k = 0; k < nb.size(); ++k) field += w[k] * state[nb[k]];
  return field;
}

double energy(const IsingModel& model, std::span<const Spin> state) {
  if (state.size() != model.num_spins()) throw std::invalid_argument("state size mismatch");
  double e = 0.0;
  const auto edges = model.graph().edges();
  const auto j = model.couplings();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    e -= j[k] * state[edges[k].u] * state[edges[k].v];
  }
  const auto h = model.biases();
  for (std::size_t i = 0; i < state.size(); ++i) e -= h[i] * state[i];
  return e;
}

FixedActivation::FixedActivation(int total_bits, int frac_bits)
    : total_bits_(total_bits), frac_bits_(frac_bits) {
  if (total_bits < 2 || total_bits > 24 || frac_bits < 1 || frac_bits >= total_bits) {
    throw std::invalid_argument("invalid fixed-point format");
  }
  saturation_ = (std::int32_t{1} << (total_bits - 1)) - 1;
  const double scale = std::ldexp(1.0, frac_bits);
  table_.resize(static_cast<std::size_t>(2 * saturation_ + 1));
  for (std::int32_t code = -saturation_; code <= saturation_; ++code) {
    auto t = static_cast<std::int32_t>(std::lround(std::tanh(code / scale) * scale));
    table_[static_cast<std::size_t>(code + saturation_)] = std::clamp(t, -saturation_, saturation_);
  }
}

std::int32_t FixedActivation::quantize(double beta_field) const {
  const double scaled = std::round(std::ldexp(beta_field, frac_bits_));
  if (!(scaled < saturation_)) return saturation_;
  if (!(scaled > -saturation_)) return -saturation_;
  return static_cast<std::int32_t>(scaled);
}

double FixedActivation::probability_plus_for_code(std::int32_t code) const {
  // r_int takes 2^(frac+1) values; +1 when r_int < threshold.
  const std::int64_t half = std::int64_t{1} << frac_bits_;
  const std::int64_t wins = std::clamp<std::int64_t>(threshold_for_code(code) + half, 0, 2 * half);
  return static_cast<double>(wins) / static_cast<double>(2 * half);
}

PbitRandom::PbitRandom(std::size_t num_pbits, std::uint64_t seed, RngKind kind)
    : kind_(kind), state_(num_pbits) {
  std::uint64_t s = seed;
  for (auto& st : state_) {
    st = splitmix64(s);
    if (kind_ == RngKind::Lfsr) {
      st &= 0xFFFFFFFFull;
      if (st == 0) st = 1;
    }
  }
}

std::uint64_t PbitRandom::next_word(NodeId i, int& bits) {
  auto& st = state_[i];
  if (kind_ == RngKind::SplitMix) {
    bits = 64;
    return splitmix64(st);
  }
  Lfsr32 lfsr(static_cast<std::uint32_t>(st));
  const std::uint32_t w = lfsr.next_word();
  st = w;
  bits = 32;
  return w;
}

double PbitRandom::uniform_signed(NodeId i) {
  int bits = 0;
  const std::uint64_t w = next_word(i, bits);
  if (bits == 64) {
    // 53-bit midpoint grid on (0, 1), mapped to (-1, 1).
    return (static_cast<double>(w >> 11) + 0.5) * 0x1.0p-52 - 1.0;
  }
  const auto signed_word = static_cast<std::int32_t>(static_cast<std::uint32_t>(w));
  return (static_cast<double>(signed_word) + 0.5) * 0x1.0p-31;
}

std::int32_t PbitRandom::uniform_int(NodeId i, int frac_bits) {
  int bits = 0;
  const std::uint64_t w = next_word(i, bits);
  const auto top = static_cast<std::int64_t>(w >> (bits - (frac_bits + 1)));
  return static_cast<std::int32_t>(top - (std::int64_t{1} << frac_bits));
}

}  // namespace pbitsim
