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

#include "pbitsim/clocks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pbitsim {

std::vector<ClockSpec> default_rosc_bank(std::size_t n_clocks, double f_lo, double f_hi) {
  if (n_clocks == 0 || !(f_lo > 0.0) || f_hi < f_lo) {
    throw std::invalid_argument("invalid clock bank range");
  }
  std::vector<ClockSpec> bank(n_clocks);
  for (std::size_t c = 0; c < n_clocks; ++c) {
    bank[c].id = static_cast<std::uint32_t>(c);
    bank[c].frequency_mhz =
        n_clocks == 1 ? f_lo
                      : f_lo + (f_hi - f_lo) * static_cast<double>(c) / static_cast<double>(n_clocks - 1);
  }
  return bank;
}

double mean_frequency_mhz(std::span<const ClockSpec> clocks) {
  if (clocks.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& c : clocks) sum += c.frequency_mhz;
  return sum / static_cast<double>(clocks.size());
}

std::vector<ClockSpec> mean_matched(std::vector<ClockSpec> clocks, double target_mhz) {
  const double mean = mean_frequency_mhz(clocks);
  if (!(mean > 0.0) || !(target_mhz > 0.0)) throw std::invalid_argument("cannot rescale clock bank");
  const double scale = target_mhz / mean;
  for (auto& c : clocks) {
    c.frequency_mhz *= scale;
    c.phase_ns = std::min(c.phase_ns / scale, std::nextafter(c.period_ns(), 0.0));
  }
  return clocks;
}

void randomize_phases(std::span<ClockSpec> clocks, Rng& rng) {
  for (auto& c : clocks) c.phase_ns = rng.uniform01() * c.period_ns();
}

std::vector<std::vector<NodeId>> ClockPlan::members() const {
  std::vector<std::vector<NodeId>> out(clocks.size());
  for (std::size_t i = 0; i < assignment.size(); ++i) out[assignment[i]].push_back(static_cast<NodeId>(i));
  return out;
}

double ClockPlan::activation_rate_per_ns() const {
  double rate = 0.0;
  for (auto c : assignment) rate += clocks[c].frequency_mhz / 1000.0;
  return rate;
}

double ClockPlan::sweep_rate_per_ns() const {
  return assignment.empty() ? 0.0 : activation_rate_per_ns() / static_cast<double>(assignment.size());
}

ClockPlan assign_clocks(const Graph& g, std::vector<ClockSpec> clocks, Rng& rng) {
  const auto colors = two_coloring(g);
  if (!colors) throw std::invalid_argument("clock assignment needs a bipartite graph");

  std::array<std::vector<NodeId>, 2> sides;
  for (NodeId i = 0; i < g.num_nodes(); ++i) sides[static_cast<int>((*colors)[i])].push_back(i);
  const bool both = !sides[0].empty() && !sides[1].empty();
  if (clocks.empty() || (both && clocks.size() < 2)) {
    throw std::invalid_argument("need at least one clock per populated partition");
  }

  const std::size_t split = (clocks.size() + 1) / 2;
  std::array<std::vector<std::uint32_t>, 2> bank;
  for (std::uint32_t c = 0; c < clocks.size(); ++c) {
    if (!both) {
      bank[0].push_back(c);
      bank[1].push_back(c);
    } else {
      bank[c < split ? 0 : 1].push_back(c);
    }
  }

  ClockPlan plan;
  plan.assignment.assign(g.num_nodes(), 0);
  for (int side = 0; side < 2; ++side) {
    if (sides[side].empty()) continue;
    const auto& own = bank[side];
    const std::size_t start = rng.uniform_index(own.size());
    for (std::size_t k = 0; k < sides[side].size(); ++k) {
      plan.assignment[sides[side][k]] = own[(start + k) % own.size()];
    }
  }
  plan.clocks = std::move(clocks);
  return plan;
}

ClockPlan dedicated_clocks(std::vector<ClockSpec> clocks) {
  ClockPlan plan;
  plan.assignment.resize(clocks.size());
  std::iota(plan.assignment.begin(), plan.assignment.end(), 0u);
  plan.clocks = std::move(clocks);
  return plan;
}

void validate_plan(const Graph& g, const ClockPlan& plan) {
  if (plan.assignment.size() != g.num_nodes()) throw std::invalid_argument("clock plan does not cover every p-bit");
  for (const auto& c : plan.clocks) {
    if (!(c.frequency_mhz > 0.0)) throw std::invalid_argument("clock frequency must be positive");
    if (!(c.phase_ns >= 0.0) || !(c.phase_ns < c.period_ns())) {
      throw std::invalid_argument("clock phase must lie within one period");
    }
    if (!(c.jitter_sigma >= 0.0)) throw std::invalid_argument("jitter must be nonnegative");
  }
  for (auto a : plan.assignment) {
    if (a >= plan.clocks.size()) throw std::invalid_argument("clock index out of range");
  }
  if (const auto colors = two_coloring(g)) {
    std::vector<int> clock_color(plan.clocks.size(), -1);
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
      auto& cc = clock_color[plan.assignment[i]];
      const int color = static_cast<int>((*colors)[i]);
      if (cc >= 0 && cc != color) throw std::invalid_argument("clock drives p-bits in both partitions");
      cc = color;
    }
  }
  for (const auto& e : g.edges()) {
    if (plan.assignment[e.u] == plan.assignment[e.v]) {
      throw std::invalid_argument("clock drives two coupled p-bits");
    }
  }
}

ClockEventStream::ClockEventStream(const ClockPlan& plan, double horizon_ns, std::uint64_t jitter_seed)
    : clocks_(plan.clocks),
      members_(plan.members()),
      edge_count_(plan.clocks.size(), 0),
      next_time_(plan.clocks.size(), 0.0),
      horizon_ns_(horizon_ns),
      jitter_rng_(jitter_seed) {
  if (!(horizon_ns > 0.0)) throw std::invalid_argument("horizon must be positive");
  for (std::uint32_t c = 0; c < clocks_.size(); ++c) {
    if (members_[c].empty()) continue;
    next_time_[c] = clocks_[c].phase_ns;
    if (next_time_[c] < horizon_ns_) queue_.push(next_time_[c], c);
  }
}

void ClockEventStream::advance(std::uint32_t c) {
  const auto& spec = clocks_[c];
  ++edge_count_[c];
  if (spec.jitter_sigma > 0.0) {
    const double factor = std::max(1e-3, 1.0 + spec.jitter_sigma * jitter_rng_.normal());
    next_time_[c] += spec.period_ns() * factor;
  } else {
    next_time_[c] = spec.phase_ns + static_cast<double>(edge_count_[c]) * spec.period_ns();
  }
  if (next_time_[c] < horizon_ns_) queue_.push(next_time_[c], c);
}

bool ClockEventStream::peek_time(double& time_ns) const {
  if (queue_.empty()) return false;
  time_ns = queue_.top().time_ns;
  return true;
}

bool ClockEventStream::next(ActivationBatch& batch) {
  batch.pbits.clear();
  if (queue_.empty()) return false;
  batch.time_ns = queue_.top().time_ns;
  std::size_t fired = 0;
  while (!queue_.empty() && queue_.top().time_ns == batch.time_ns) {
    const auto c = queue_.top().key;
    queue_.pop();
    batch.pbits.insert(batch.pbits.end(), members_[c].begin(), members_[c].end());
    advance(c);
    ++fired;
  }
  if (fired > 1) std::sort(batch.pbits.begin(), batch.pbits.end());
  return true;
}

std::vector<ActivationEvent> schedule_events(const ClockPlan& plan, double horizon_ns,
                                             std::uint64_t jitter_seed) {
  ClockEventStream stream(plan, horizon_ns, jitter_seed);
  std::vector<ActivationEvent> events;
  ActivationBatch batch;
  while (stream.next(batch)) {
    for (NodeId p : batch.pbits) events.push_back({batch.time_ns, p});
  }
  return events;
}

}  // namespace pbitsim
