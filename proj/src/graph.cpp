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

#include "pbitsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <tuple>

namespace pbitsim {

Graph Graph::from_edges(std::size_t num_nodes, std::vector<Edge> edges,
                        std::vector<Color> partition) {
  for (auto& e : edges) {
    if (e.u == e.v) throw std::invalid_argument("self loops are not allowed");
    if (e.u >= num_nodes || e.v >= num_nodes) throw std::out_of_range("edge endpoint out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  if (!partition.empty() && partition.size() != num_nodes) {
    throw std::invalid_argument("partition size does not match node count");
  }

  Graph g;
  g.edges_ = std::move(edges);
  g.partition_ = std::move(partition);
  g.offsets_.assign(num_nodes + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());

  std::vector<std::pair<NodeId, std::uint32_t>> scratch(g.offsets_.back());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (std::uint32_t id = 0; id < g.edges_.size(); ++id) {
    const auto& e = g.edges_[id];
    scratch[fill[e.u]++] = {e.v, id};
    scratch[fill[e.v]++] = {e.u, id};
  }
  for (std::size_t i = 0; i < num_nodes; ++i) {
    std::sort(scratch.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
              scratch.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
  }
  g.adjacency_.reserve(scratch.size());
  g.adjacency_edge_.reserve(scratch.size());
  for (const auto& [n, id] : scratch) {
    g.adjacency_.push_back(n);
    g.adjacency_edge_.push_back(id);
  }
  return g;
}

std::span<const NodeId> Graph::neighbors(NodeId i) const {
  check_node(i);
  return {adjacency_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::span<const std::uint32_t> Graph::edge_ids(NodeId i) const {
  check_node(i);
  return {adjacency_edge_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    best = std::max(best, offsets_[i + 1] - offsets_[i]);
  }
  return best;
}

std::optional<std::uint32_t> Graph::find_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return std::nullopt;
  return edge_ids(u)[static_cast<std::size_t>(it - nb.begin())];
}

NodeId chimera_node(const ChimeraShape& s, std::size_t row, std::size_t col, int side,
                    std::size_t index) {
  return static_cast<NodeId>(((row * s.cols + col) * 2 + static_cast<std::size_t>(side)) * s.shore +
                             index);
}

Graph build_chimera(const ChimeraShape& shape) {
  if (shape.rows == 0 || shape.cols == 0 || shape.shore == 0) {
    throw std::invalid_argument("chimera dimensions must be positive");
  }
  std::vector<Edge> edges;
  edges.reserve(shape.expected_edges());
  std::vector<Color> partition(shape.num_nodes());

  for (std::size_t r = 0; r < shape.rows; ++r) {
    for (std::size_t c = 0; c < shape.cols; ++c) {
      const int parity = static_cast<int>((r + c) & 1);
      for (std::size_t k = 0; k < shape.shore; ++k) {
        const NodeId a = chimera_node(shape, r, c, 0, k);
        const NodeId b = chimera_node(shape, r, c, 1, k);
        partition[a] = static_cast<Color>(0 ^ parity);
        partition[b] = static_cast<Color>(1 ^ parity);
        for (std::size_t l = 0; l < shape.shore; ++l) {
          edges.push_back({a, chimera_node(shape, r, c, 1, l)});
        }
        if (r + 1 < shape.rows) edges.push_back({a, chimera_node(shape, r + 1, c, 0, k)});
        if (c + 1 < shape.cols) edges.push_back({b, chimera_node(shape, r, c + 1, 1, k)});
      }
    }
  }
  Graph g = Graph::from_edges(shape.num_nodes(), std::move(edges), std::move(partition));
  g.shape_ = shape;
  return g;
}

bool is_proper_coloring(const Graph& g, std::span<const Color> colors) {
  if (colors.size() != g.num_nodes()) return false;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return colors[e.u] != colors[e.v]; });
}

std::optional<std::vector<Color>> two_coloring(const Graph& g) {
  if (!g.partition().empty() && is_proper_coloring(g, g.partition())) {
    return std::vector<Color>(g.partition().begin(), g.partition().end());
  }
  const std::size_t n = g.num_nodes();
  std::vector<int> color(n, -1);
  std::deque<NodeId> queue;
  for (NodeId start = 0; start < n; ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    queue.push_back(start);
    while (!queue.empty()) {
      const NodeId u = queue.front();
      queue.pop_front();
      for (NodeId v : g.neighbors(u)) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          queue.push_back(v);
        } else if (color[v] == color[u]) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<Color> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<Color>(color[i]);
  return out;
}

}  // namespace pbitsim
