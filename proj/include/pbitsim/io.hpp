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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "pbitsim/planted.hpp"
#include "pbitsim/samplers.hpp"

namespace pbitsim {

inline constexpr int kSchemaVersion = 1;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Instance files. J is stored twice: as exact integer numerators over Z
// and as the normalized triples (i, j, J_ij) with i < j.
nlohmann::json instance_to_json(const PlantedInstance& inst);
/// Loads exactly what the file says (no regeneration), so tampering is
/// visible to verify_plant. Throws FormatError.
PlantedInstance instance_from_json(const nlohmann::json& j);

void write_instance(const std::filesystem::path& path, const PlantedInstance& inst);
PlantedInstance read_instance(const std::filesystem::path& path);

/// One line of a results file.
struct TrialRecord {
  std::string instance_id;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t shore = 0;
  std::size_t spins = 0;
  std::uint64_t trial = 0;
  double tau = 0.0;
  /// "ns" for model-time samplers, "sweeps" for the serial baseline.
  std::string tau_unit;
  double ground_energy = 0.0;
  /// Mean activation frequency of the clock fabric; 0 for the serial sampler.
  double clock_mhz = 0.0;
  TrialResult result;
  /// Set when the trial failed; result is then meaningless.
  std::optional<std::string> error;

  std::string size_tiles() const { return std::to_string(rows) + "x" + std::to_string(cols); }
};

nlohmann::json record_to_json(const TrialRecord& rec);
TrialRecord record_from_json(const nlohmann::json& j);
/// Compact single-line JSON.
std::string record_to_line(const TrialRecord& rec);
std::vector<TrialRecord> read_records(const std::filesystem::path& path);

}  // namespace pbitsim
