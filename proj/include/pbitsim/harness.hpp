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
#include <vector>

#include "json.hpp"
#include "pbitsim/bench.hpp"
#include "pbitsim/io.hpp"

namespace pbitsim {

/// Everything needed to replay a batch of trials.
struct RunConfig {
  SamplerKind sampler = SamplerKind::Async;

  double beta_start = 0.5;
  double beta_end = 7.0;
  double beta_step = 0.5;
  std::uint64_t sweeps_per_stage = 937;

  // Asynchronous clock bank. An explicit `clocks` list overrides the
  // evenly spaced bank described by n_clocks / f_lo / f_hi.
  std::size_t n_clocks = 10;
  double f_lo_mhz = 5.0;
  double f_hi_mhz = 17.0;
  std::vector<ClockSpec> clocks;
  bool mean_match = false;
  double mean_target_mhz = kReferenceMeanMhz;
  double jitter_sigma = 0.0;
  HazardConfig hazards{};
  AsyncMode async_mode = AsyncMode::TimeDriven;

  // Synchronous two-phase clock.
  double f_clock_mhz = kReferenceMeanMhz;

  /// Model-time annealing length for chromatic/async; derived from the
  /// schedule and mean clock frequency when unset.
  std::optional<double> tau_ns;

  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  bool lfsr = false;
  bool fixed_point = false;
  int fixed_total_bits = 10;
  int fixed_frac_bits = 7;
  ScanOrder scan = ScanOrder::Ascending;
  bool stop_on_success = true;
  double success_rel_tol = 1e-9;
  double success_abs_tol = 1e-12;
  std::size_t threads = 1;

  AnnealSchedule schedule() const;
  /// Bank after mean matching and jitter, phases zero.
  std::vector<ClockSpec> clock_bank() const;
  /// Annealing length per trial and its unit ("ns" or "sweeps").
  std::pair<double, std::string> tau() const;
};

nlohmann::json config_to_json(const RunConfig& cfg);
/// Missing keys keep their defaults. Throws FormatError.
RunConfig config_from_json(const nlohmann::json& j);

struct InstanceEntry {
  std::string id;
  PlantedInstance instance;
};

/// Clock plan used for every trial of instance `index` (phases are redrawn per trial).
ClockPlan instance_clock_plan(const RunConfig& cfg, const Graph& g, std::size_t index);

/// Trial `trial` of instance `index`, seeded with trial_seed(cfg.seed, index, trial).
/// Failures are captured in TrialRecord::error.
TrialRecord run_trial(const RunConfig& cfg, const InstanceEntry& entry, std::size_t index, std::uint64_t trial);

/// Runs cfg.trials trials per instance on cfg.threads threads. Records reach
/// `sink` instance by instance, trials ascending. Returns the failure count.
std::size_t run_trials(const RunConfig& cfg, std::span<const InstanceEntry> instances,
                       const std::function<void(const TrialRecord&)>& sink);

struct ReportOptions {
  double p_target = 0.99;
  double confidence = 0.95;
  std::size_t resamples = 10'000;
  std::uint64_t seed = 0;
};

struct ReportRow {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t shore = 0;
  std::size_t spins = 0;
  SamplerKind sampler = SamplerKind::Serial;
  std::string tau_unit;
  double tau = 0.0;
  std::size_t instances = 0;
  std::uint64_t trials = 0;
  std::uint64_t failed_trials = 0;
  SizeEstimate estimate;
  BootstrapInterval ci;
  /// Mean attempted flips per model second (or per step for serial).
  FlipRate flips;

  std::string size_tiles() const { return std::to_string(rows) + "x" + std::to_string(cols); }
};

/// Groups records by (size, sampler), ordered by spins then sampler name.
/// Throws std::invalid_argument on empty input or mixed tau within a group.
std::vector<ReportRow> build_report(std::span<const TrialRecord> records, const ReportOptions& options = {});

/// size_tiles,spins,sampler,tau_unit,tau,mean_pS,tts,ci_lo,ci_hi,censored
std::string report_csv(std::span<const ReportRow> rows);
std::string report_table(std::span<const ReportRow> rows);

}  // namespace pbitsim
