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

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pbitsim/graph.hpp"
#include "pbitsim/model.hpp"
#include "pbitsim/rng.hpp"

namespace pbitsim {

/// A closed loop n_0 .. n_{k-1} (n_k = n_0) plus the edge whose planted
/// sign is inverted. Edge j joins nodes[j] and nodes[(j + 1) % k].
struct Clause {
  std::vector<NodeId> nodes;
  std::size_t flipped_edge = 0;

  std::size_t length() const { return nodes.size(); }
  friend bool operator==(const Clause&, const Clause&) = default;
};

/// The loop walk gave up; the graph has no reachable cycle of admissible length.
class AttemptBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultLoopAttempts = 1'000'000;

/// Draws one admissible loop by repeated non-backtracking random walks of
/// at most l_max steps. A walk closes when it revisits a node; the segment
/// from that node's first visit is the loop, accepted when its length lies
/// in [l_min, l_max]. Failed walks restart from a fresh random node.
Clause random_loop(const Graph& g, int l_min, int l_max, Rng& rng,
                   std::size_t max_attempts = kDefaultLoopAttempts);

struct PlantParams {
  double alpha = 0.4;
  int l_min = 4;
  int l_max = 8;
  std::uint64_t seed = 0;
};

/// Frustrated-loop instance with a known ground state.
///
/// Couplings are kept both as exact integers (`raw_couplings`, one per
/// edge, the folded sum of every clause increment on that edge) and as the
/// normalized model J = raw / Z with Z = max |raw|. h is identically zero.
struct PlantedInstance {
  IsingModel model;
  SpinState plant;
  std::vector<Clause> clauses;
  std::vector<std::int64_t> raw_couplings;
  std::int64_t normalization = 1;
  /// Sum over clauses of (k - 2); the ground energy is -frustration_sum / Z.
  std::int64_t frustration_sum = 0;
  double ground_energy = 0.0;
  PlantParams params;

  const Graph& graph() const { return model.graph(); }
};

/// Builds the instance implied by a plant and a clause list.
/// Throws std::invalid_argument when a clause uses a non-edge or all
/// couplings cancel.
PlantedInstance assemble_instance(Graph g, SpinState plant, std::vector<Clause> clauses,
                                  PlantParams params = {});

/// Uniform +/-1 plant, round(alpha * n) clauses from random_loop, then
/// assemble_instance.
PlantedInstance generate_instance(const Graph& g, const PlantParams& params,
                                  std::size_t max_attempts = kDefaultLoopAttempts);

struct PlantReport {
  /// Per-clause energy at the plant, in raw (unnormalized) units.
  std::vector<std::int64_t> clause_energies_raw;
  /// Every clause has a negative sign product and exactly one edge
  /// unsatisfied by the plant.
  bool frustration_ok = true;
  /// Stored couplings equal the sum of clause increments (up to scale).
  bool couplings_match = true;
  /// energy(plant) equals the recorded ground energy.
  bool energy_match = true;
  double plant_energy = 0.0;

  bool ok() const { return frustration_ok && couplings_match && energy_match; }
};

PlantReport verify_plant(const PlantedInstance& inst);

/// |a - b| within 1e-12 relative to max(1, |b|).
bool energies_equal(double a, double b);

}  // namespace pbitsim
