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
#include <span>
#include <vector>

namespace pbitsim {

struct AnnealStage {
  double beta = 1.0;
  std::uint64_t sweeps = 1;

  friend bool operator==(const AnnealStage&, const AnnealStage&) = default;
};

/// Piecewise-constant inverse-temperature schedule measured in sweeps.
class AnnealSchedule {
 public:
  AnnealSchedule() = default;
  /// Throws std::invalid_argument on empty input, negative beta, decreasing
  /// betas or zero-sweep stages.
  explicit AnnealSchedule(std::vector<AnnealStage> stages);

  /// Stages at beta_start, beta_start + step, ..., beta_end inclusive.
  static AnnealSchedule linear(double beta_start, double beta_end, double beta_step,
                               std::uint64_t sweeps_per_stage);

  /// Single fixed-beta stage.
  static AnnealSchedule constant(double beta, std::uint64_t sweeps) {
    return AnnealSchedule({{beta, sweeps}});
  }

  /// 0.5 .. 7.0 in steps of 0.5, 937 sweeps per stage.
  static AnnealSchedule reference() { return linear(0.5, 7.0, 0.5, 937); }

  std::span<const AnnealStage> stages() const { return stages_; }
  std::size_t num_stages() const { return stages_.size(); }
  std::uint64_t total_sweeps() const { return total_; }
  double final_beta() const { return stages_.back().beta; }

  /// Beta of the stage containing sweep position `sweep` in [0, total].
  /// Stage boundaries belong to the later stage; position `total` maps to
  /// the last stage.
  double beta_at(double sweep) const;
  /// Index of the stage containing `sweep` (same convention as beta_at).
  std::size_t stage_at(double sweep) const;

  /// Sweep count at which stage `s` begins.
  std::uint64_t stage_start(std::size_t s) const { return starts_[s]; }

  friend bool operator==(const AnnealSchedule& a, const AnnealSchedule& b) {
    return a.stages_ == b.stages_;
  }

 private:
  std::vector<AnnealStage> stages_;
  std::vector<std::uint64_t> starts_;
  std::uint64_t total_ = 0;
};

}  // namespace pbitsim
