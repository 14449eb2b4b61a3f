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

#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pbitsim/model.hpp"
#include "pbitsim/planted.hpp"

using namespace pbitsim;

namespace {

IsingModel random_tile_model(std::uint64_t seed, bool with_bias) {
  Graph g = build_chimera(1, 1);
  Rng rng(seed);
  std::vector<double> j(g.num_edges());
  for (auto& v : j) v = 2.0 * rng.uniform01() - 1.0;
  std::vector<double> h;
  if (with_bias) {
    h.resize(g.num_nodes());
    for (auto& v : h) v = rng.uniform01() - 0.5;
  }
  return IsingModel(std::move(g), std::move(j), std::move(h));
}

std::vector<oracle::Coupling> edge_list(const IsingModel& m) {
  std::vector<oracle::Coupling> out;
  for (std::size_t e = 0; e < m.graph().num_edges(); ++e) {
    out.push_back({static_cast<int>(m.graph().edges()[e].u), static_cast<int>(m.graph().edges()[e].v),
                   m.couplings()[e]});
  }
  return out;
}

SpinState state_from_index(std::uint64_t idx, int n) {
  SpinState s(n);
  for (int k = 0; k < n; ++k) s[k] = static_cast<Spin>(oracle::spin_of(idx, k));
  return s;
}

}  // namespace

TEST_CASE("local field") {
  SUBCASE("isolated node sees only its bias") {
    const IsingModel m(Graph::from_edges(1, {}), {}, {0.3});
    CHECK(local_field(m, SpinState{1}, 0) == doctest::Approx(0.3));
  }
  SUBCASE("single ferromagnetic edge") {
    const IsingModel m(Graph::from_edges(2, {{0, 1}}), {1.0}, {});
    CHECK(local_field(m, SpinState{-1, 1}, 0) == 1.0);
  }
  SUBCASE("matches a dense matrix-vector product") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto m = random_tile_model(seed, true);
      const auto dense = oracle::dense_matrix(8, edge_list(m));
      Rng rng(seed + 99);
      SpinState s(8);
      for (auto& v : s) v = static_cast<Spin>(rng.sign());
      for (int i = 0; i < 8; ++i) {
        double expect = m.biases()[i];
        for (int j = 0; j < 8; ++j) expect += dense[i][j] * s[j];
        CHECK(local_field(m, s, i) == doctest::Approx(expect).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("energy") {
  const IsingModel pair(Graph::from_edges(2, {{0, 1}}), {1.0}, {});
  CHECK(energy(pair, SpinState{1, 1}) == -1.0);
  CHECK(energy(pair, SpinState{1, -1}) == 1.0);

  const auto m = random_tile_model(3, false);
  const auto edges = edge_list(m);
  for (std::uint64_t idx = 0; idx < 256; ++idx) {
    const auto s = state_from_index(idx, 8);
    CHECK(energy(m, s) == doctest::Approx(oracle::edge_energy(edges, {}, idx)).epsilon(1e-14));
    auto flipped = s;
    for (auto& v : flipped) v = static_cast<Spin>(-v);
    CHECK(energy(m, flipped) == doctest::Approx(energy(m, s)).epsilon(1e-14));
  }
  CHECK_THROWS(energy(m, SpinState(7, 1)));
}

TEST_CASE("flip delta equals the energy difference") {
  const auto m = random_tile_model(8, true);
  for (std::uint64_t idx = 0; idx < 256; idx += 7) {
    auto s = state_from_index(idx, 8);
    for (NodeId i = 0; i < 8; ++i) {
      const double before = energy(m, s);
      const double delta = flip_delta(m, s, i);
      s[i] = static_cast<Spin>(-s[i]);
      CHECK(energy(m, s) - before == doctest::Approx(delta).epsilon(1e-12));
      s[i] = static_cast<Spin>(-s[i]);
    }
  }
}

TEST_CASE("p-bit update probabilities") {
  auto frequency = [](double field, double beta, int draws, std::uint64_t seed) {
    PbitRandom rng(1, seed);
    int plus = 0;
    for (int k = 0; k < draws; ++k) plus += pbit_update(field, beta, rng.uniform_signed(0)) > 0;
    return static_cast<double>(plus) / draws;
  };
  CHECK(std::abs(frequency(0.8, 0.0, 1000000, 1) - 0.5) < 0.002);
  CHECK(std::abs(frequency(0.5, 1.0, 1000000, 2) - 0.5 * (1.0 + std::tanh(0.5))) < 0.002);
  CHECK(frequency(1.0, 7.0, 100000, 3) == 1.0);
}

TEST_CASE("p-bit update matches the Gibbs conditional (chi-square)") {
  // Ten bins of the activation input; each bin compared against its exact
  // conditional probability. Critical value for 10 dof at p = 0.001 is 29.6.
  PbitRandom rng(1, 77);
  double chi2 = 0.0;
  const int draws = 20000;
  for (int bin = 0; bin < 10; ++bin) {
    const double x = -2.0 + 0.4 * bin;
    int plus = 0;
    for (int k = 0; k < draws; ++k) plus += pbit_update(x, 1.0, rng.uniform_signed(0)) > 0;
    const double p = 0.5 * (1.0 + std::tanh(x));
    const double expect = p * draws;
    chi2 += (plus - expect) * (plus - expect) / (expect * (1.0 - p));
  }
  CHECK(chi2 < 29.6);
}

TEST_CASE("LFSR") {
  SUBCASE("8-bit register has period 255") {
    Lfsr8 r(1);
    std::set<std::uint8_t> seen;
    int period = 0;
    do {
      seen.insert(r.state());
      r.step();
      ++period;
    } while (r.state() != 1);
    CHECK(period == 255);
    CHECK(seen.size() == 255);
  }
  SUBCASE("32-bit register is deterministic and seed dependent") {
    Lfsr32 a(1), b(1), c(2);
    const double first = a.next_signed();
    CHECK(first == b.next_signed());
    CHECK(first != c.next_signed());
    Lfsr32 fresh(1);
    CHECK(fresh.next_word() == Lfsr32(1).next_word());
  }
  SUBCASE("32-bit outputs are centred and inside (-1, 1)") {
    Lfsr32 r(0x00000001u);
    double sum = 0.0;
    for (int k = 0; k < 1000000; ++k) {
      const double x = r.next_signed();
      REQUIRE(x > -1.0);
      REQUIRE(x < 1.0);
      sum += x;
    }
    CHECK(std::abs(sum / 1e6) < 0.01);
  }
  CHECK_THROWS(Lfsr32(0));
}

TEST_CASE("per-p-bit streams") {
  for (auto kind : {RngKind::SplitMix, RngKind::Lfsr}) {
    PbitRandom a(4, 5, kind), b(4, 5, kind);
    for (int k = 0; k < 100; ++k) {
      for (NodeId i = 0; i < 4; ++i) {
        const double x = a.uniform_signed(i);
        CHECK(x == b.uniform_signed(i));
        CHECK(x > -1.0);
        CHECK(x < 1.0);
        const auto r = a.uniform_int(i, 7);
        CHECK(r == b.uniform_int(i, 7));
        CHECK(r >= -128);
        CHECK(r <= 127);
      }
    }
    // Streams advance independently: drawing from one leaves another unchanged.
    PbitRandom c(2, 9, kind), d(2, 9, kind);
    c.uniform_signed(0);
    CHECK(c.uniform_signed(1) == d.uniform_signed(1));
  }
}

TEST_CASE("fixed-point activation") {
  const FixedActivation fa;
  CHECK(fa.saturation() == 511);
  CHECK(fa.probability_plus_for_code(0) == 0.5);
  for (std::int32_t c = -511; c <= 511; ++c) CHECK(fa.threshold_for_code(c) == -fa.threshold_for_code(-c));

  SUBCASE("saturation is deterministic") {
    for (std::int32_t r = -128; r <= 127; ++r) {
      CHECK(fa.activate(10.0, 1.0, r) == 1);
      CHECK(fa.activate(-10.0, 1.0, r) == -1);
    }
    CHECK(fa.quantize(1e9) == 511);
    CHECK(fa.quantize(-1e9) == -511);
  }

  SUBCASE("deviation from the float rule over every code") {
    double worst = 0.0;
    for (std::int32_t c = -510; c <= 510; ++c) {
      for (double offset : {-0.5, 0.0, 0.5}) {
        const double x = (c + offset) / 128.0;
        REQUIRE(std::abs(fa.quantize(x) - c) <= 1);
        const double p_float = 0.5 * (1.0 + std::tanh(x));
        worst = std::max(worst, std::abs(fa.probability_plus_for_code(fa.quantize(x)) - p_float));
      }
    }
    CHECK(worst <= std::ldexp(1.0, -6));
  }

  SUBCASE("uniform r_int reproduces the table probability") {
    for (std::int32_t c : {-300, -50, 0, 17, 200}) {
      int plus = 0;
      for (std::int32_t r = -128; r <= 127; ++r) plus += fa.threshold_for_code(c) > r;
      CHECK(plus / 256.0 == fa.probability_plus_for_code(c));
    }
  }
  CHECK_THROWS(FixedActivation(4, 4));
}
