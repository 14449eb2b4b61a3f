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

#include "pbitsim/io.hpp"

#include <fstream>
#include <sstream>
#include <tuple>

namespace pbitsim {

using nlohmann::json;

namespace {

void check_schema(const json& j, const char* kind) {
  if (!j.is_object()) throw FormatError(std::string(kind) + ": expected a JSON object");
  if (!j.contains("schema_version")) throw FormatError(std::string(kind) + ": missing schema_version");
  const int v = j.at("schema_version").get<int>();
  if (v > kSchemaVersion) {
    throw FormatError(std::string(kind) + ": schema_version " + std::to_string(v) +
                      " is newer than supported version " + std::to_string(kSchemaVersion));
  }
  if (v < 1) throw FormatError(std::string(kind) + ": invalid schema_version");
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> read_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

}  // namespace

json instance_to_json(const PlantedInstance& inst) {
  const auto& shape = inst.graph().chimera_shape();
  if (!shape) throw FormatError("only Chimera instances can be serialized");

  json clauses = json::array();
  for (const auto& c : inst.clauses) clauses.push_back({{"nodes", c.nodes}, {"flipped_edge", c.flipped_edge}});

  json triples = json::array();
  json numerators = json::array();
  const auto edges = inst.graph().edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (inst.raw_couplings[e] == 0) continue;
    triples.push_back({edges[e].u, edges[e].v, inst.model.couplings()[e]});
    numerators.push_back(inst.raw_couplings[e]);
  }
  std::vector<int> plant(inst.plant.begin(), inst.plant.end());

  return json{
      {"schema_version", kSchemaVersion},
      {"kind", "planted_instance"},
      {"graph", {{"topology", "chimera"}, {"rows", shape->rows}, {"cols", shape->cols}, {"shore", shape->shore}}},
      {"alpha", inst.params.alpha},
      {"l_min", inst.params.l_min},
      {"l_max", inst.params.l_max},
      {"seed", inst.params.seed},
      {"plant", plant},
      {"clauses", clauses},
      {"Z", inst.normalization},
      {"frustration_sum", inst.frustration_sum},
      {"E_ground", inst.ground_energy},
      {"J", triples},
      {"J_numerators", numerators},
  };
}

PlantedInstance instance_from_json(const json& j) {
  check_schema(j, "instance");
  try {
    if (j.value("kind", "") != "planted_instance") throw FormatError("instance: wrong kind");
    const auto& gj = j.at("graph");
    if (gj.value("topology", "") != "chimera") throw FormatError("instance: unsupported topology");
    Graph g = build_chimera(gj.at("rows").get<std::size_t>(), gj.at("cols").get<std::size_t>(),
                            gj.at("shore").get<std::size_t>());

    PlantedInstance inst;
    inst.params.alpha = j.at("alpha").get<double>();
    inst.params.l_min = j.at("l_min").get<int>();
    inst.params.l_max = j.at("l_max").get<int>();
    inst.params.seed = j.at("seed").get<std::uint64_t>();
    for (int s : j.at("plant").get<std::vector<int>>()) {
      if (s != 1 && s != -1) throw FormatError("instance: plant spins must be +/-1");
      inst.plant.push_back(static_cast<Spin>(s));
    }
    if (inst.plant.size() != g.num_nodes()) throw FormatError("instance: plant length mismatch");
    for (const auto& c : j.at("clauses")) {
      inst.clauses.push_back({c.at("nodes").get<std::vector<NodeId>>(), c.at("flipped_edge").get<std::size_t>()});
    }
    inst.normalization = j.at("Z").get<std::int64_t>();
    if (inst.normalization <= 0) throw FormatError("instance: Z must be positive");
    inst.frustration_sum = j.at("frustration_sum").get<std::int64_t>();
    inst.ground_energy = j.at("E_ground").get<double>();

    const auto& triples = j.at("J");
    const auto numerators = j.at("J_numerators").get<std::vector<std::int64_t>>();
    if (numerators.size() != triples.size()) throw FormatError("instance: J and J_numerators differ in length");
    std::vector<double> couplings(g.num_edges(), 0.0);
    inst.raw_couplings.assign(g.num_edges(), 0);
    NodeId last_u = 0, last_v = 0;
    for (std::size_t k = 0; k < triples.size(); ++k) {
      const auto u = triples[k].at(0).get<NodeId>();
      const auto v = triples[k].at(1).get<NodeId>();
      if (u >= v) throw FormatError("instance: J triples need i < j");
      if (k > 0 && std::tie(u, v) <= std::tie(last_u, last_v)) {
        throw FormatError("instance: J triples must be unique and sorted");
      }
      last_u = u;
      last_v = v;
      if (u >= g.num_nodes() || v >= g.num_nodes()) throw FormatError("instance: J triple out of range");
      const auto id = g.find_edge(u, v);
      if (!id) throw FormatError("instance: J triple on a non-edge");
      couplings[*id] = triples[k].at(2).get<double>();
      inst.raw_couplings[*id] = numerators[k];
    }
    inst.model = IsingModel(std::move(g), std::move(couplings), {});
    return inst;
  } catch (const json::exception& e) {
    throw FormatError(std::string("instance: ") + e.what());
  }
}

void write_instance(const std::filesystem::path& path, const PlantedInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << instance_to_json(inst).dump(1) << '\n';
}

PlantedInstance read_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

json record_to_json(const TrialRecord& rec) {
  json j{
      {"schema_version", kSchemaVersion},
      {"instance", rec.instance_id},
      {"size_tiles", rec.size_tiles()},
      {"rows", rec.rows},
      {"cols", rec.cols},
      {"shore", rec.shore},
      {"spins", rec.spins},
      {"trial", rec.trial},
      {"seed", rec.result.seed},
      {"sampler", std::string(to_string(rec.result.sampler))},
      {"tau", rec.tau},
      {"tau_unit", rec.tau_unit},
      {"E_ground", rec.ground_energy},
      {"clock_mhz", rec.clock_mhz},
  };
  if (rec.error) {
    j["error"] = *rec.error;
    return j;
  }
  const auto& r = rec.result;
  j["success"] = r.success;
  j["best_energy"] = r.best_energy;
  j["final_energy"] = r.final_energy;
  j["sweeps_executed"] = r.sweeps_executed;
  j["model_time_ns"] = r.model_time_ns;
  j["first_success_sweeps"] = optional_number(r.first_success_sweeps);
  j["first_success_ns"] = optional_number(r.first_success_ns);
  j["updates"] = r.updates;
  j["flips"] = r.flips;
  j["stale_reads"] = r.stale_reads;
  j["stale_values"] = r.stale_values;
  j["collisions"] = r.collisions;
  return j;
}

TrialRecord record_from_json(const json& j) {
  check_schema(j, "result record");
  try {
    TrialRecord rec;
    rec.instance_id = j.at("instance").get<std::string>();
    rec.rows = j.at("rows").get<std::size_t>();
    rec.cols = j.at("cols").get<std::size_t>();
    rec.shore = j.at("shore").get<std::size_t>();
    rec.spins = j.at("spins").get<std::size_t>();
    rec.trial = j.at("trial").get<std::uint64_t>();
    rec.tau = j.at("tau").get<double>();
    rec.tau_unit = j.at("tau_unit").get<std::string>();
    rec.ground_energy = j.at("E_ground").get<double>();
    rec.clock_mhz = j.value("clock_mhz", 0.0);
    auto& r = rec.result;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.sampler = sampler_from_string(j.at("sampler").get<std::string>());
    if (j.contains("error")) {
      rec.error = j.at("error").get<std::string>();
      return rec;
    }
    r.success = j.at("success").get<bool>();
    r.best_energy = j.at("best_energy").get<double>();
    r.final_energy = j.at("final_energy").get<double>();
    r.sweeps_executed = j.at("sweeps_executed").get<double>();
    r.model_time_ns = j.at("model_time_ns").get<double>();
    r.first_success_sweeps = read_optional(j, "first_success_sweeps");
    r.first_success_ns = read_optional(j, "first_success_ns");
    r.updates = j.at("updates").get<std::uint64_t>();
    r.flips = j.at("flips").get<std::uint64_t>();
    r.stale_reads = j.at("stale_reads").get<std::uint64_t>();
    r.stale_values = j.at("stale_values").get<std::uint64_t>();
    r.collisions = j.at("collisions").get<std::uint64_t>();
    return rec;
  } catch (const json::exception& e) {
    throw FormatError(std::string("result record: ") + e.what());
  }
}

std::string record_to_line(const TrialRecord& rec) { return record_to_json(rec).dump(); }

std::vector<TrialRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::vector<TrialRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw FormatError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace pbitsim
