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

#include "pbitsim/anneal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbitsim {

AnnealSchedule::AnnealSchedule(std::vector<AnnealStage> stages) : stages_(std::move(stages)) {
  if (stages_.empty()) throw std::invalid_argument("schedule needs at least one stage");
  double last = 0.0;
  for (const auto& s : stages_) {
    if (!(s.beta >= 0.0)) throw std::invalid_argument("beta must be nonnegative");
    if (s.beta < last) throw std::invalid_argument("betas must be nondecreasing");
    if (s.sweeps == 0) throw std::invalid_argument("every stage needs at least one sweep");
    last = s.beta;
    starts_.push_back(total_);
    total_ += s.sweeps;
  }
}

AnnealSchedule AnnealSchedule::linear(double beta_start, double beta_end, double beta_step,
                                      std::uint64_t sweeps_per_stage) {
  if (!(beta_step > 0.0) || beta_start > beta_end || beta_start < 0.0 || sweeps_per_stage == 0) {
    throw std::invalid_argument("invalid linear schedule range");
  }
  const auto count = static_cast<std::size_t>(std::floor((beta_end - beta_start) / beta_step + 1e-9)) + 1;
  std::vector<AnnealStage> stages;
  stages.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    stages.push_back({beta_start + static_cast<double>(k) * beta_step, sweeps_per_stage});
  }
  return AnnealSchedule(std::move(stages));
}

std::size_t AnnealSchedule::stage_at(double sweep) const {
  if (!(sweep >= 0.0) || sweep > static_cast<double>(total_)) {
    throw std::out_of_range("progress outside the schedule");
  }
  auto it = std::upper_bound(starts_.begin(), starts_.end(), sweep,
                             [](double x, std::uint64_t start) { return x < static_cast<double>(start); });
  return static_cast<std::size_t>(it - starts_.begin()) - 1;
}

double AnnealSchedule::beta_at(double sweep) const { return stages_[stage_at(sweep)].beta; }

}  // namespace pbitsim
