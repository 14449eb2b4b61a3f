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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "pbitsim/planted.hpp"

using namespace pbitsim;

namespace {

bool is_closed_walk(const Graph& g, const Clause& c) {
  for (std::size_t j = 0; j < c.length(); ++j) {
    if (!g.adjacent(c.nodes[j], c.nodes[(j + 1) % c.length()])) return false;
  }
  std::set<NodeId> unique(c.nodes.begin(), c.nodes.end());
  return unique.size() == c.length();
}

}  // namespace

TEST_CASE("4-loops on one tile are genuine K4,4 4-cycles") {
  const Graph g = build_chimera(1, 1);
  // Brute force: every 4-cycle of K4,4 is two side-A nodes plus two side-B nodes.
  std::set<std::set<NodeId>> cycles;
  for (NodeId a1 = 0; a1 < 4; ++a1)
    for (NodeId a2 = a1 + 1; a2 < 4; ++a2)
      for (NodeId b1 = 4; b1 < 8; ++b1)
        for (NodeId b2 = b1 + 1; b2 < 8; ++b2) cycles.insert({a1, a2, b1, b2});
  REQUIRE(cycles.size() == 36);

  Rng rng(11);
  std::set<std::set<NodeId>> seen;
  for (int t = 0; t < 2000; ++t) {
    const Clause c = random_loop(g, 4, 4, rng);
    REQUIRE(c.length() == 4);
    CHECK(is_closed_walk(g, c));
    for (std::size_t j = 0; j < 4; ++j) CHECK((c.nodes[j] < 4) != (c.nodes[(j + 1) % 4] < 4));
    const std::set<NodeId> nodes(c.nodes.begin(), c.nodes.end());
    CHECK(cycles.count(nodes) == 1);
    seen.insert(nodes);
    CHECK(c.flipped_edge < 4);
  }
  CHECK(seen.size() == cycles.size());
}

TEST_CASE("loop lengths on Chimera are even and within bounds") {
  const Graph g = build_chimera(3, 3);
  Rng rng(5);
  std::set<std::size_t> lengths;
  for (int t = 0; t < 3000; ++t) {
    const Clause c = random_loop(g, 4, 8, rng);
    CHECK(is_closed_walk(g, c));
    CHECK(c.length() % 2 == 0);
    CHECK(c.length() >= 4);
    CHECK(c.length() <= 8);
    lengths.insert(c.length());
  }
  CHECK(lengths == std::set<std::size_t>{4, 6, 8});
}

TEST_CASE("acyclic graph exhausts the attempt budget") {
  const Graph path = Graph::from_edges(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}});
  Rng rng(1);
  CHECK_THROWS_AS(random_loop(path, 3, 6, rng, 500), AttemptBudgetExceeded);
  CHECK_THROWS_AS(random_loop(path, 2, 6, rng, 10), std::invalid_argument);
}

TEST_CASE("clause count is round(alpha * n)") {
  const Graph g = build_chimera(10, 10);
  const auto inst = generate_instance(g, {0.4, 4, 8, 3});
  CHECK(inst.clauses.size() == 320);
  CHECK(build_chimera(2, 1).num_nodes() == 16);
  CHECK(generate_instance(build_chimera(2, 1), {0.4, 4, 8, 0}).clauses.size() == 6);
  CHECK(generate_instance(build_chimera(1, 1), {0.4, 4, 8, 0}).clauses.size() == 3);
}

TEST_CASE("plant energy equals the frustration bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = build_chimera(3, 2);
    const auto inst = generate_instance(g, {0.4, 4, 8, seed});
    std::int64_t expect = 0;
    for (const auto& c : inst.clauses) expect += static_cast<std::int64_t>(c.length()) - 2;
    CHECK(inst.frustration_sum == expect);
    CHECK(inst.ground_energy == doctest::Approx(-static_cast<double>(expect) / inst.normalization).epsilon(1e-14));
    CHECK(energies_equal(energy(inst.model, inst.plant), inst.ground_energy));

    std::int64_t z = 0;
    for (auto r : inst.raw_couplings) z = std::max<std::int64_t>(z, std::abs(r));
    CHECK(inst.normalization == z);
    double max_abs = 0.0;
    for (double j : inst.model.couplings()) max_abs = std::max(max_abs, std::abs(j));
    CHECK(max_abs == 1.0);
    for (double h : inst.model.biases()) CHECK(h == 0.0);

    const auto rep = verify_plant(inst);
    CHECK(rep.ok());
    for (std::size_t k = 0; k < inst.clauses.size(); ++k) {
      CHECK(rep.clause_energies_raw[k] == -(static_cast<std::int64_t>(inst.clauses[k].length()) - 2));
    }
  }
}

TEST_CASE("plant is a ground state (exhaustive, 16 spins)") {
  const Graph g = build_chimera(2, 1);
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    const auto inst = generate_instance(g, {0.4, 4, 8, seed});
    std::vector<std::tuple<int, int, std::int64_t>> edges;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      edges.emplace_back(g.edges()[e].u, g.edges()[e].v, inst.raw_couplings[e]);
    }
    CHECK(oracle::min_integer_energy(16, edges) == -inst.frustration_sum);
  }
}

TEST_CASE("single 4-clause by hand") {
  const Graph g = build_chimera(1, 1);
  const SpinState plant(8, 1);
  const Clause c{{0, 4, 1, 5}, 2};
  const auto inst = assemble_instance(g, plant, {c});
  const auto rep = verify_plant(inst);
  REQUIRE(rep.ok());
  CHECK(rep.clause_energies_raw == std::vector<std::int64_t>{-2});
  CHECK(inst.ground_energy == -2.0);

  // Exactly one loop coupling disagrees with the plant.
  int disagree = 0;
  for (std::size_t j = 0; j < 4; ++j) {
    const NodeId a = c.nodes[j], b = c.nodes[(j + 1) % 4];
    if (inst.model.coupling(a, b) * plant[a] * plant[b] < 0) ++disagree;
  }
  CHECK(disagree == 1);
  CHECK(inst.model.coupling(1, 5) == -1.0);
}

TEST_CASE("tampering is detected") {
  const Graph g = build_chimera(2, 2);
  const auto inst = generate_instance(g, {0.4, 4, 8, 9});
  REQUIRE(verify_plant(inst).ok());

  SUBCASE("zeroed coupling") {
    auto bad = inst;
    std::vector<double> j(bad.model.couplings().begin(), bad.model.couplings().end());
    const auto it = std::find_if(j.begin(), j.end(), [](double v) { return v != 0.0; });
    *it = 0.0;
    bad.model = IsingModel(g, j, {});
    const auto rep = verify_plant(bad);
    CHECK_FALSE(rep.energy_match);
    CHECK_FALSE(rep.couplings_match);
  }
  SUBCASE("wrong ground energy") {
    auto bad = inst;
    bad.ground_energy += 1e-6;
    CHECK_FALSE(verify_plant(bad).energy_match);
  }
  SUBCASE("flipped plant spin") {
    auto bad = inst;
    bad.plant[bad.clauses[0].nodes[0]] *= -1;
    CHECK_FALSE(verify_plant(bad).ok());
  }
}

TEST_CASE("generation is deterministic in the seed") {
  const Graph g = build_chimera(3, 3);
  const auto a = generate_instance(g, {0.4, 4, 8, 42});
  const auto b = generate_instance(g, {0.4, 4, 8, 42});
  const auto c = generate_instance(g, {0.4, 4, 8, 43});
  CHECK(a.clauses == b.clauses);
  CHECK(a.plant == b.plant);
  CHECK(a.raw_couplings == b.raw_couplings);
  CHECK_FALSE(a.clauses == c.clauses);
}

TEST_CASE("invalid input") {
  const Graph g = build_chimera(1, 1);
  CHECK_THROWS_AS(assemble_instance(g, SpinState(8, 1), {Clause{{0, 1, 4, 5}, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(assemble_instance(g, SpinState(7, 1), {}), std::invalid_argument);
  CHECK_THROWS_AS(generate_instance(g, {0.01, 4, 8, 0}), std::invalid_argument);
  CHECK_THROWS_AS(assemble_instance(g, SpinState(8, 1), {}), std::invalid_argument);
  CHECK_THROWS_AS(assemble_instance(g, SpinState(8, 1), {Clause{{0, 4, 0, 5}, 0}}), std::invalid_argument);
}
