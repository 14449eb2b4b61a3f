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
#include <queue>
#include <span>
#include <vector>

#include "pbitsim/graph.hpp"
#include "pbitsim/rng.hpp"

namespace pbitsim {

/// Average clock frequency of the synchronous two-phase baseline, in MHz.
inline constexpr double kReferenceMeanMhz = 9.375;
/// Annealing time per trial on the reference hardware, in ns (1.4 ms).
inline constexpr double kReferenceTauNs = 1.4e6;

/// A free-running ring-oscillator clock. Edges occur at phase + k * period.
struct ClockSpec {
  std::uint32_t id = 0;
  double frequency_mhz = 1.0;
  double phase_ns = 0.0;
  /// Per-period Gaussian jitter as a fraction of the period; 0 disables.
  double jitter_sigma = 0.0;

  double period_ns() const { return 1000.0 / frequency_mhz; }
  friend bool operator==(const ClockSpec&, const ClockSpec&) = default;
};

/// n clocks with frequencies evenly spaced on [f_lo, f_hi] and zero phase.
std::vector<ClockSpec> default_rosc_bank(std::size_t n_clocks, double f_lo = 5.0, double f_hi = 17.0);

double mean_frequency_mhz(std::span<const ClockSpec> clocks);

/// Rescales all frequencies by a common factor so their mean is `target_mhz`.
std::vector<ClockSpec> mean_matched(std::vector<ClockSpec> clocks, double target_mhz = kReferenceMeanMhz);

/// Draws each phase uniformly on [0, period).
void randomize_phases(std::span<ClockSpec> clocks, Rng& rng);

/// Per-p-bit clock assignment.
struct ClockPlan {
  std::vector<ClockSpec> clocks;
  /// Index into `clocks` for every p-bit.
  std::vector<std::uint32_t> assignment;

  /// P-bits driven by each clock, ascending.
  std::vector<std::vector<NodeId>> members() const;
  /// Attempted flips per ns summed over all p-bits.
  double activation_rate_per_ns() const;
  /// activation_rate_per_ns() / number of p-bits.
  double sweep_rate_per_ns() const;
};

/// Splits the bank between the two partitions (first ceil(n/2) clocks to
/// color A, the rest to color B) and deals each partition's p-bits, in
/// ascending id, round-robin over its clocks from a random starting clock.
/// Throws std::invalid_argument with fewer than two clocks when both
/// partitions are populated.
ClockPlan assign_clocks(const Graph& g, std::vector<ClockSpec> clocks, Rng& rng);

/// One clock per p-bit. Used to replay a serial scan through the
/// asynchronous engine.
ClockPlan dedicated_clocks(std::vector<ClockSpec> clocks);

/// Throws std::invalid_argument when the plan does not cover the graph, has
/// invalid clocks, or drives two differently colored p-bits from one clock.
void validate_plan(const Graph& g, const ClockPlan& plan);

struct ActivationEvent {
  double time_ns = 0.0;
  NodeId pbit = 0;

  friend bool operator==(const ActivationEvent&, const ActivationEvent&) = default;
};

/// Min-priority queue of (time, key) pairs; equal times pop in ascending key.
class EventQueue {
 public:
  struct Entry {
    double time_ns;
    std::uint32_t key;
  };

  void push(double time_ns, std::uint32_t key) { heap_.push({time_ns, key}); }
  const Entry& top() const { return heap_.top(); }
  void pop() { heap_.pop(); }
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }

 private:
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      return a.time_ns != b.time_ns ? a.time_ns > b.time_ns : a.key > b.key;
    }
  };
  std::priority_queue<Entry, std::vector<Entry>, Later> heap_;
};

/// All p-bits activated at one instant, ascending id.
struct ActivationBatch {
  double time_ns = 0.0;
  std::vector<NodeId> pbits;
};

/// Lazily merges the clock edges of a plan into time order over [0, horizon).
class ClockEventStream {
 public:
  ClockEventStream(const ClockPlan& plan, double horizon_ns, std::uint64_t jitter_seed = 0);

  /// Fills `batch` with the next instant; false once the horizon is reached.
  bool next(ActivationBatch& batch);
  /// Time of the next instant without consuming it; false when exhausted.
  bool peek_time(double& time_ns) const;

 private:
  void advance(std::uint32_t clock);

  std::vector<ClockSpec> clocks_;
  std::vector<std::vector<NodeId>> members_;
  std::vector<std::uint64_t> edge_count_;
  std::vector<double> next_time_;
  double horizon_ns_;
  Rng jitter_rng_;
  EventQueue queue_;
};

/// Materialized event stream over [0, horizon), sorted by (time, p-bit).
std::vector<ActivationEvent> schedule_events(const ClockPlan& plan, double horizon_ns,
                                             std::uint64_t jitter_seed = 0);

}  // namespace pbitsim
