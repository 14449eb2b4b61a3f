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

#include "pbitsim/bench.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pbitsim/rng.hpp"

namespace pbitsim {

std::optional<double> n_repetitions(double p_success, double p_target) {
  if (!(p_success >= 0.0 && p_success <= 1.0)) throw std::invalid_argument("p_success must lie in [0, 1]");
  if (!(p_target > 0.0 && p_target < 1.0)) throw std::invalid_argument("p_target must lie in (0, 1)");
  if (p_success == 0.0) return std::nullopt;
  if (p_success == 1.0) return 1.0;
  return std::max(1.0, std::log1p(-p_target) / std::log1p(-p_success));
}

std::optional<double> time_to_solution(double tau, double p_success, double p_target) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
  auto reps = n_repetitions(p_success, p_target);
  if (!reps) return std::nullopt;
  return tau * *reps;
}

SizeEstimate aggregate_size(std::span<const InstanceStats> stats, double p_target, double tau) {
  if (stats.empty()) throw std::invalid_argument("no instances to aggregate");
  SizeEstimate out;
  double sum = 0.0;
  for (const auto& s : stats) {
    sum += s.p_success();
    if (s.successes == 0) ++out.censored_instances;
  }
  out.mean_p_success = sum / static_cast<double>(stats.size());
  out.tts = time_to_solution(tau, out.mean_p_success, p_target);
  return out;
}

double nearest_rank(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-12));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

BootstrapInterval bootstrap_ci(std::span<const InstanceStats> stats, double p_target, double tau,
                               std::size_t resamples, double confidence, std::uint64_t seed) {
  if (stats.empty()) throw std::invalid_argument("no instances to bootstrap");
  if (resamples == 0) throw std::invalid_argument("need at least one resample");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");

  const std::size_t m = stats.size();
  std::vector<double> p(m);
  for (std::size_t k = 0; k < m; ++k) p[k] = stats[k].p_success();

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(resamples);
  BootstrapInterval ci;
  ci.resamples = resamples;
  for (std::size_t r = 0; r < resamples; ++r) {
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) sum += p[rng.uniform_index(m)];
    const auto tts = time_to_solution(tau, sum / static_cast<double>(m), p_target);
    if (!tts) ++ci.censored_resamples;
    values.push_back(tts.value_or(std::numeric_limits<double>::infinity()));
  }
  std::sort(values.begin(), values.end());
  ci.low = nearest_rank(values, (1.0 - confidence) / 2.0);
  ci.high = nearest_rank(values, (1.0 + confidence) / 2.0);
  ci.censoring_flag = static_cast<double>(ci.censored_resamples) > 0.01 * static_cast<double>(resamples);
  return ci;
}

FlipRate flips_per_second(SamplerKind kind, std::size_t num_pbits, double mean_frequency_mhz) {
  if (kind == SamplerKind::Serial) return {1.0, "step"};
  return {static_cast<double>(num_pbits) * mean_frequency_mhz * 1e6, "second"};
}

}  // namespace pbitsim
