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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pbitsim {

using NodeId = std::uint32_t;

/// Two-coloring label. Chimera lattices are bipartite, so two colors suffice.
enum class Color : std::uint8_t { A = 0, B = 1 };

struct Edge {
  NodeId u;
  NodeId v;  // u < v

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Tile layout of a Chimera lattice: rows x cols unit cells, each a K_{shore,shore}.
struct ChimeraShape {
  std::size_t rows = 1;
  std::size_t cols = 1;
  std::size_t shore = 4;

  std::size_t num_tiles() const { return rows * cols; }
  std::size_t num_nodes() const { return rows * cols * 2 * shore; }
  std::size_t expected_edges() const {
    return rows * cols * shore * shore + shore * (rows * (cols - 1) + cols * (rows - 1));
  }

  friend bool operator==(const ChimeraShape&, const ChimeraShape&) = default;
};

/// Undirected simple graph in compressed adjacency form.
///
/// Neighbor lists are sorted. Every undirected edge has an id; `edge_ids(i)`
/// is aligned with `neighbors(i)` so per-edge data (couplings) can be
/// addressed from either endpoint. Immutable after construction.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Self loops are rejected; duplicates
  /// (in either orientation) are merged.
  static Graph from_edges(std::size_t num_nodes, std::vector<Edge> edges,
                          std::vector<Color> partition = {});

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId i) const;
  std::span<const std::uint32_t> edge_ids(NodeId i) const;
  std::size_t degree(NodeId i) const { return neighbors(i).size(); }
  /// Position of neighbors(i)[0] in the flattened adjacency array.
  std::size_t adjacency_offset(NodeId i) const { return offsets_[i]; }
  std::size_t max_degree() const;

  /// Id of edge {u, v}, if present.
  std::optional<std::uint32_t> find_edge(NodeId u, NodeId v) const;
  bool adjacent(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

  /// Stored partition; empty when the graph was built without one.
  std::span<const Color> partition() const { return partition_; }

  const std::optional<ChimeraShape>& chimera_shape() const { return shape_; }

 private:
  friend Graph build_chimera(const ChimeraShape& shape);

  void check_node(NodeId i) const {
    if (i >= num_nodes()) throw std::out_of_range("node id out of range");
  }

  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<std::uint32_t> adjacency_edge_;
  std::vector<Edge> edges_;
  std::vector<Color> partition_;
  std::optional<ChimeraShape> shape_;
};

/// Node numbering: tiles in row-major order; inside a tile the `shore`
/// side-A (vertical) nodes come first, then the side-B (horizontal) nodes.
/// Side-A nodes couple to the same index in the tile below, side-B nodes to
/// the same index in the tile to the right.
///
/// The stored partition is the checkerboard coloring
/// side ^ ((row + col) & 1), which is a proper 2-coloring of this topology.
Graph build_chimera(const ChimeraShape& shape);

inline Graph build_chimera(std::size_t rows, std::size_t cols, std::size_t shore = 4) {
  return build_chimera(ChimeraShape{rows, cols, shore});
}

/// Node id of (row, col, side, index) in a Chimera lattice.
NodeId chimera_node(const ChimeraShape& shape, std::size_t row, std::size_t col, int side,
                    std::size_t index);

/// Proper two-coloring via BFS; std::nullopt when the graph has an odd cycle.
/// Returns the stored partition when one is present and valid.
std::optional<std::vector<Color>> two_coloring(const Graph& g);

/// True when every edge joins differently colored nodes.
bool is_proper_coloring(const Graph& g, std::span<const Color> colors);

}  // namespace pbitsim
