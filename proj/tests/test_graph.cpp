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
#include <set>

#include "doctest.h"
#include "pbitsim/graph.hpp"

using namespace pbitsim;

namespace {

// Independent enumeration of Chimera couplers straight from the tile layout.
std::set<std::pair<NodeId, NodeId>> enumerate_chimera(std::size_t rows, std::size_t cols, std::size_t shore) {
  std::set<std::pair<NodeId, NodeId>> out;
  auto id = [&](std::size_t r, std::size_t c, int side, std::size_t k) {
    return static_cast<NodeId>((r * cols + c) * 2 * shore + side * shore + k);
  };
  auto add = [&](NodeId a, NodeId b) { out.insert({std::min(a, b), std::max(a, b)}); };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      for (std::size_t a = 0; a < shore; ++a) {
        for (std::size_t b = 0; b < shore; ++b) add(id(r, c, 0, a), id(r, c, 1, b));
        if (r + 1 < rows) add(id(r, c, 0, a), id(r + 1, c, 0, a));
        if (c + 1 < cols) add(id(r, c, 1, a), id(r, c + 1, 1, a));
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("single tile is K4,4") {
  const Graph g = build_chimera(1, 1);
  CHECK(g.num_nodes() == 8);
  CHECK(g.num_edges() == 16);
  const auto nb = g.neighbors(0);
  CHECK(std::vector<NodeId>(nb.begin(), nb.end()) == std::vector<NodeId>{4, 5, 6, 7});
}

TEST_CASE("edge counts") {
  CHECK(build_chimera(10, 10).num_edges() == 2320);
  CHECK(build_chimera(10, 10).num_nodes() == 800);
  CHECK(build_chimera(2, 1).num_edges() == 36);
  CHECK(build_chimera(2, 1).num_nodes() == 16);
}

TEST_CASE("edge set matches direct enumeration and the closed form") {
  for (std::size_t rows = 1; rows <= 5; ++rows) {
    for (std::size_t cols = 1; cols <= 5; ++cols) {
      for (std::size_t shore : {1, 2, 4}) {
        CAPTURE(rows);
        CAPTURE(cols);
        CAPTURE(shore);
        const Graph g = build_chimera(rows, cols, shore);
        const auto expected = enumerate_chimera(rows, cols, shore);
        std::set<std::pair<NodeId, NodeId>> got;
        for (const auto& e : g.edges()) got.insert({e.u, e.v});
        CHECK(got == expected);
        CHECK(g.num_edges() == ChimeraShape{rows, cols, shore}.expected_edges());
      }
    }
  }
}

TEST_CASE("interior degree and handshake") {
  const Graph g = build_chimera(10, 10);
  const ChimeraShape s{10, 10, 4};
  for (std::size_t r = 1; r < 9; ++r) {
    for (std::size_t c = 1; c < 9; ++c) {
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(g.degree(chimera_node(s, r, c, 0, k)) == 6);
        CHECK(g.degree(chimera_node(s, r, c, 1, k)) == 6);
      }
    }
  }
  std::size_t sum = 0;
  for (NodeId i = 0; i < g.num_nodes(); ++i) sum += g.degree(i);
  CHECK(sum == 2 * g.num_edges());
  CHECK(g.max_degree() == 6);
}

TEST_CASE("neighbor lists are sorted and symmetric") {
  const Graph g = build_chimera(3, 4);
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const auto nb = g.neighbors(i);
    CHECK(std::is_sorted(nb.begin(), nb.end()));
    const auto ids = g.edge_ids(i);
    for (std::size_t k = 0; k < nb.size(); ++k) {
      CHECK(g.adjacent(nb[k], i));
      const auto& e = g.edges()[ids[k]];
      CHECK(((e.u == i && e.v == nb[k]) || (e.v == i && e.u == nb[k])));
    }
  }
  CHECK_THROWS_AS(g.neighbors(static_cast<NodeId>(g.num_nodes())), std::out_of_range);
}

TEST_CASE("two-coloring") {
  SUBCASE("single tile splits 4/4") {
    const auto c = two_coloring(build_chimera(1, 1));
    REQUIRE(c);
    CHECK(std::count(c->begin(), c->end(), Color::A) == 4);
    CHECK(std::count(c->begin(), c->end(), Color::B) == 4);
  }
  SUBCASE("10x10 splits 400/400") {
    const auto c = two_coloring(build_chimera(10, 10));
    REQUIRE(c);
    CHECK(std::count(c->begin(), c->end(), Color::A) == 400);
  }
  SUBCASE("every edge is bichromatic on all sizes") {
    for (std::size_t r = 1; r <= 6; ++r) {
      for (std::size_t c = 1; c <= 6; ++c) {
        const Graph g = build_chimera(r, c);
        const auto col = two_coloring(g);
        REQUIRE(col);
        CHECK(is_proper_coloring(g, *col));
        CHECK(is_proper_coloring(g, g.partition()));
      }
    }
  }
  SUBCASE("odd cycle has no coloring") {
    const Graph tri = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK_FALSE(two_coloring(tri).has_value());
  }
}

TEST_CASE("from_edges merges duplicates and rejects self loops") {
  const Graph g = Graph::from_edges(3, {{0, 1}, {1, 0}, {1, 2}});
  CHECK(g.num_edges() == 2);
  CHECK(g.find_edge(1, 0) == g.find_edge(0, 1));
  CHECK_FALSE(g.find_edge(0, 2).has_value());
  CHECK_THROWS(Graph::from_edges(2, {{1, 1}}));
  CHECK_THROWS(Graph::from_edges(2, {{0, 2}}));
}

TEST_CASE("zero dimensions are rejected") {
  CHECK_THROWS_AS(build_chimera(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_chimera(2, 2, 0), std::invalid_argument);
}
