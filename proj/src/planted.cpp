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

#include "pbitsim/planted.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace pbitsim {

Clause random_loop(const Graph& g, int l_min, int l_max, Rng& rng, std::size_t max_attempts) {
  if (l_min < 3 || l_max < l_min) throw std::invalid_argument("loop bounds must satisfy 3 <= l_min <= l_max");
  const std::size_t n = g.num_nodes();
  if (n == 0) throw std::invalid_argument("empty graph");

  std::vector<std::int32_t> position(n, -1);
  std::vector<NodeId> path;
  path.reserve(static_cast<std::size_t>(l_max) + 1);

  for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
    for (NodeId v : path) position[v] = -1;
    path.clear();

    const auto start = static_cast<NodeId>(rng.uniform_index(n));
    path.push_back(start);
    position[start] = 0;
    bool has_prev = false;
    NodeId prev = 0;

    for (int step = 0; step < l_max; ++step) {
      const NodeId cur = path.back();
      const auto nb = g.neighbors(cur);
      const std::size_t choices = nb.size() - (has_prev ? 1 : 0);
      if (choices == 0) break;
      std::size_t pick = rng.uniform_index(choices);
      NodeId next = 0;
      for (NodeId cand : nb) {
        if (has_prev && cand == prev) continue;
        if (pick-- == 0) {
          next = cand;
          break;
        }
      }
      if (position[next] >= 0) {
        const auto first = static_cast<std::size_t>(position[next]);
        const auto len = static_cast<int>(path.size() - first);
        if (len < l_min || len > l_max) break;
        Clause clause;
        clause.nodes.assign(path.begin() + static_cast<std::ptrdiff_t>(first), path.end());
        clause.flipped_edge = rng.uniform_index(clause.nodes.size());
        for (NodeId v : path) position[v] = -1;
        return clause;
      }
      position[next] = static_cast<std::int32_t>(path.size());
      path.push_back(next);
      prev = cur;
      has_prev = true;
    }
  }
  throw AttemptBudgetExceeded("no loop with length in [" + std::to_string(l_min) + ", " +
                              std::to_string(l_max) + "] after " + std::to_string(max_attempts) +
                              " attempts");
}

namespace {

// Edge ids and planted-sign increments of one clause.
struct ClauseTerms {
  std::vector<std::uint32_t> edges;
  std::vector<int> increments;
  std::vector<int> plant_products;
};

ClauseTerms clause_terms(const Graph& g, const SpinState& plant, const Clause& c) {
  const std::size_t k = c.length();
  if (k < 3) throw std::invalid_argument("clause shorter than 3 nodes");
  if (c.flipped_edge >= k) throw std::invalid_argument("flipped edge index out of range");
  ClauseTerms t;
  for (std::size_t e = 0; e < k; ++e) {
    const NodeId a = c.nodes[e];
    const NodeId b = c.nodes[(e + 1) % k];
    const auto id = g.find_edge(a, b);
    if (!id) throw std::invalid_argument("clause uses a pair that is not a graph edge");
    const int product = plant[a] * plant[b];
    t.edges.push_back(*id);
    t.plant_products.push_back(product);
    t.increments.push_back(e == c.flipped_edge ? -product : product);
  }
  return t;
}

}  // namespace

bool energies_equal(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
}

PlantedInstance assemble_instance(Graph g, SpinState plant, std::vector<Clause> clauses,
                                  PlantParams params) {
  if (plant.size() != g.num_nodes()) throw std::invalid_argument("plant size mismatch");
  for (Spin s : plant) {
    if (s != 1 && s != -1) throw std::invalid_argument("plant spins must be +/-1");
  }
  std::vector<std::int64_t> raw(g.num_edges(), 0);
  std::int64_t frustration = 0;
  for (const auto& c : clauses) {
    auto sorted = c.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("clause repeats a node");
    }
    const auto terms = clause_terms(g, plant, c);
    for (std::size_t e = 0; e < terms.edges.size(); ++e) raw[terms.edges[e]] += terms.increments[e];
    frustration += static_cast<std::int64_t>(c.length()) - 2;
  }
  std::int64_t z = 0;
  for (auto r : raw) z = std::max(z, std::abs(r));
  if (z == 0) throw std::invalid_argument("all couplings cancelled; instance is empty");

  std::vector<double> couplings(raw.size());
  for (std::size_t e = 0; e < raw.size(); ++e) {
    couplings[e] = static_cast<double>(raw[e]) / static_cast<double>(z);
  }

  PlantedInstance inst;
  inst.model = IsingModel(std::move(g), std::move(couplings), {});
  inst.plant = std::move(plant);
  inst.clauses = std::move(clauses);
  inst.raw_couplings = std::move(raw);
  inst.normalization = z;
  inst.frustration_sum = frustration;
  inst.ground_energy = -static_cast<double>(frustration) / static_cast<double>(z);
  inst.params = params;
  return inst;
}

PlantedInstance generate_instance(const Graph& g, const PlantParams& params,
                                  std::size_t max_attempts) {
  if (!(params.alpha > 0)) throw std::invalid_argument("alpha must be positive");
  const auto n = g.num_nodes();
  const auto num_clauses = static_cast<std::size_t>(std::llround(params.alpha * static_cast<double>(n)));
  if (num_clauses == 0) throw std::invalid_argument("alpha * nodes rounds to zero clauses");

  Rng rng(params.seed);
  SpinState plant(n);
  for (auto& s : plant) s = static_cast<Spin>(rng.sign());
  std::vector<Clause> clauses;
  clauses.reserve(num_clauses);
  for (std::size_t c = 0; c < num_clauses; ++c) {
    clauses.push_back(random_loop(g, params.l_min, params.l_max, rng, max_attempts));
  }
  return assemble_instance(g, std::move(plant), std::move(clauses), params);
}

PlantReport verify_plant(const PlantedInstance& inst) {
  PlantReport report;
  const Graph& g = inst.graph();
  std::vector<std::int64_t> rebuilt(g.num_edges(), 0);
  std::int64_t frustration = 0;
  for (const auto& c : inst.clauses) {
    ClauseTerms terms;
    try {
      terms = clause_terms(g, inst.plant, c);
    } catch (const std::invalid_argument&) {
      report.frustration_ok = false;
      report.couplings_match = false;
      report.clause_energies_raw.push_back(0);
      continue;
    }
    int sign_product = 1;
    int violated = 0;
    std::int64_t clause_energy = 0;
    for (std::size_t e = 0; e < terms.edges.size(); ++e) {
      sign_product *= terms.increments[e];
      const int satisfied = terms.increments[e] * terms.plant_products[e];
      if (satisfied < 0) {
        ++violated;
        if (e != c.flipped_edge) report.frustration_ok = false;
      }
      clause_energy -= satisfied;
      rebuilt[terms.edges[e]] += terms.increments[e];
    }
    if (sign_product >= 0 || violated != 1) report.frustration_ok = false;
    report.clause_energies_raw.push_back(clause_energy);
    frustration += static_cast<std::int64_t>(c.length()) - 2;
  }

  const auto z = static_cast<double>(inst.normalization);
  if (rebuilt != inst.raw_couplings || inst.model.couplings().size() != rebuilt.size()) {
    report.couplings_match = false;
  } else {
    for (std::size_t e = 0; e < rebuilt.size(); ++e) {
      if (inst.model.couplings()[e] != static_cast<double>(rebuilt[e]) / z) report.couplings_match = false;
    }
  }

  report.plant_energy = energy(inst.model, inst.plant);
  const double expected = -static_cast<double>(frustration) / z;
  report.energy_match = frustration == inst.frustration_sum &&
                        energies_equal(inst.ground_energy, expected) &&
                        energies_equal(report.plant_energy, inst.ground_energy);
  return report;
}

}  // namespace pbitsim
