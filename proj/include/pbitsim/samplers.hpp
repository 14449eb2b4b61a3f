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
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pbitsim/anneal.hpp"
#include "pbitsim/clocks.hpp"
#include "pbitsim/model.hpp"

namespace pbitsim {

enum class SamplerKind { Serial, Chromatic, Async };

std::string_view to_string(SamplerKind kind);
/// Throws std::invalid_argument for unknown names.
SamplerKind sampler_from_string(std::string_view name);

enum class ScanOrder { Ascending, RandomPermutation };

/// When the asynchronous engine advances beta: at fixed model-time stage
/// boundaries, or after a fixed number of activations per stage.
enum class AsyncMode { TimeDriven, SweepDriven };

/// Hardware hazards of the asynchronous fabric.
struct HazardConfig {
  /// A neighbor activated less than this long ago is read at its previous value.
  double synapse_delay_ns = 3.33;
  /// Activations closer than this (and exact ties) all read the pre-update state.
  double simultaneity_window_ns = 0.0;
};

/// One p-bit update: the field it saw and the value it took.
struct TraceEntry {
  NodeId node;
  Spin value;
  double field;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct SamplerOptions {
  std::uint64_t seed = 0;
  RngKind rng = RngKind::SplitMix;
  Activation activation{};
  /// Ground energy for success detection; no success tracking when unset.
  std::optional<double> target_energy;
  /// Success when energy <= target + rel_tol * |target| + abs_tol.
  double success_rel_tol = 1e-9;
  double success_abs_tol = 1e-12;
  /// End the trial at the first success.
  bool stop_on_success = false;
  /// Starting state; uniformly random from the seed when empty.
  SpinState initial_state;
  /// Receives every update in execution order.
  std::vector<TraceEntry>* trace = nullptr;
  /// Called with the state after every completed sweep (serial, chromatic).
  std::function<void(std::span<const Spin>)> on_sweep;
};

struct AsyncOptions {
  HazardConfig hazards{};
  AsyncMode mode = AsyncMode::TimeDriven;
  /// Redraw clock phases from the trial seed.
  bool randomize_phases = true;
  /// Model time of the trial. Defaults to total sweeps / mean sweep rate.
  std::optional<double> horizon_ns;
};

struct TrialResult {
  SamplerKind sampler = SamplerKind::Serial;
  std::uint64_t seed = 0;
  bool success = false;
  double best_energy = 0.0;
  double final_energy = 0.0;
  /// Attempted updates divided by the number of p-bits.
  double sweeps_executed = 0.0;
  /// Model time in ns; 0 for the serial sampler.
  double model_time_ns = 0.0;
  std::optional<double> first_success_sweeps;
  std::optional<double> first_success_ns;
  std::uint64_t updates = 0;
  std::uint64_t flips = 0;
  /// Neighbor reads inside a neighbor's propagation window.
  std::uint64_t stale_reads = 0;
  /// Stale reads whose value differed from the committed one.
  std::uint64_t stale_values = 0;
  /// Activations that shared an instant with an activated neighbor.
  std::uint64_t collisions = 0;
  SpinState final_state;
};

/// target + rel_tol * |target| + abs_tol.
double success_threshold(double target_energy, double rel_tol = 1e-9, double abs_tol = 1e-12);

/// Sequential Gibbs: every sweep visits each node once and updates it in place.
TrialResult run_serial_gibbs(const IsingModel& model, const AnnealSchedule& schedule,
                             const SamplerOptions& options, ScanOrder order = ScanOrder::Ascending);

/// Chromatic block Gibbs on a two-coloring: all color-A p-bits update from
/// the same frozen state, then all color-B p-bits. Each block takes half a
/// clock period. With `horizon_ns` the trial runs floor(horizon * f) sweeps,
/// holding the final beta past the end of the schedule.
/// Throws std::invalid_argument for non-bipartite graphs.
TrialResult run_chromatic(const IsingModel& model, const AnnealSchedule& schedule, double f_clock_mhz,
                          const SamplerOptions& options, std::optional<double> horizon_ns = std::nullopt);

/// Event-driven asynchronous sampler fed by free-running clocks.
TrialResult run_async(const IsingModel& model, const AnnealSchedule& schedule, const ClockPlan& plan,
                      const SamplerOptions& options, const AsyncOptions& async = {});

}  // namespace pbitsim
