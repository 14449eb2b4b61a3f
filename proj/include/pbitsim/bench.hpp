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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pbitsim/samplers.hpp"

namespace pbitsim {

/// Expected repetitions to hit the ground state at least once with
/// probability p_target: max(1, ln(1 - p_target) / ln(1 - p_success)).
/// std::nullopt (censored) when p_success == 0.
/// Throws std::invalid_argument outside 0 <= p_success <= 1, 0 < p_target < 1.
std::optional<double> n_repetitions(double p_success, double p_target);

/// Time to solution tau * n_repetitions, in the unit of tau.
std::optional<double> time_to_solution(double tau, double p_success, double p_target);

struct InstanceStats {
  std::string instance_id;
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  /// Annealing time of one trial: model ns, or sweeps for the serial sampler.
  double tau = 0.0;

  double p_success() const {
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
  }
};

struct SizeEstimate {
  double mean_p_success = 0.0;
  /// Censored when every instance has p_S = 0.
  std::optional<double> tts;
  /// Instances with zero successes.
  std::size_t censored_instances = 0;
};

/// Mean p_S over instances, then time_to_solution at that mean.
SizeEstimate aggregate_size(std::span<const InstanceStats> stats, double p_target, double tau);

struct BootstrapInterval {
  double low = 0.0;
  /// +infinity when the upper percentile lands on a censored resample.
  double high = 0.0;
  std::size_t censored_resamples = 0;
  std::size_t resamples = 0;
  /// More than 1% of resamples were censored.
  bool censoring_flag = false;
};

/// Percentile bootstrap over instances (resampled with replacement).
/// Censored resamples sort to the top. Percentiles use the nearest-rank
/// rule: the value of rank ceil(q * R) in the sorted resample list.
BootstrapInterval bootstrap_ci(std::span<const InstanceStats> stats, double p_target, double tau,
                               std::size_t resamples = 10'000, double confidence = 0.95,
                               std::uint64_t seed = 0);

/// Value of rank ceil(q * n) (1-based, clamped to [1, n]) in sorted data.
double nearest_rank(std::span<const double> sorted, double q);

struct FlipRate {
  /// Attempted flips per model second (FPGA models) or per model step (serial).
  double attempted_flips = 0.0;
  /// "second" or "step".
  std::string per;
};

/// Serial: 1 flip per step. Chromatic/async: N * f_avg per model second.
FlipRate flips_per_second(SamplerKind kind, std::size_t num_pbits, double mean_frequency_mhz);

}  // namespace pbitsim
