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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pbitsim/bench.hpp"
#include "pbitsim/harness.hpp"
#include "pbitsim/io.hpp"

namespace py = pybind11;
using namespace pbitsim;

namespace {

SpinState to_state(const std::vector<int>& spins) {
  SpinState s;
  s.reserve(spins.size());
  for (int v : spins) {
    if (v != 1 && v != -1) throw std::invalid_argument("spins must be +1 or -1");
    s.push_back(static_cast<Spin>(v));
  }
  return s;
}

std::vector<TrialRecord> parse_records(const std::vector<std::string>& lines) {
  std::vector<TrialRecord> out;
  out.reserve(lines.size());
  for (const auto& l : lines) out.push_back(record_from_json(nlohmann::json::parse(l)));
  return out;
}

std::vector<InstanceStats> to_stats(const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts, double tau) {
  std::vector<InstanceStats> out;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    out.push_back({std::to_string(k), counts[k].first, counts[k].second, tau});
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "p-bit Ising simulator core";

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<AttemptBudgetExceeded>(m, "AttemptBudgetExceeded", PyExc_RuntimeError);

  py::class_<PlantedInstance>(m, "Instance")
      .def_property_readonly("num_spins", [](const PlantedInstance& i) { return i.model.num_spins(); })
      .def_property_readonly("ground_energy", [](const PlantedInstance& i) { return i.ground_energy; })
      .def_property_readonly("normalization", [](const PlantedInstance& i) { return i.normalization; })
      .def_property_readonly("frustration_sum", [](const PlantedInstance& i) { return i.frustration_sum; })
      .def_property_readonly("seed", [](const PlantedInstance& i) { return i.params.seed; })
      .def_property_readonly("plant",
                             [](const PlantedInstance& i) { return std::vector<int>(i.plant.begin(), i.plant.end()); })
      .def_property_readonly("clauses",
                             [](const PlantedInstance& i) {
                               std::vector<std::pair<std::vector<NodeId>, std::size_t>> out;
                               for (const auto& c : i.clauses) out.emplace_back(c.nodes, c.flipped_edge);
                               return out;
                             })
      .def_property_readonly("couplings",
                             [](const PlantedInstance& i) {
                               std::vector<std::tuple<NodeId, NodeId, double>> out;
                               for (const auto& e : i.graph().edges()) {
                                 out.emplace_back(e.u, e.v, i.model.coupling(e.u, e.v));
                               }
                               return out;
                             })
      .def("energy", [](const PlantedInstance& i, const std::vector<int>& spins) {
        const auto s = to_state(spins);
        if (s.size() != i.model.num_spins()) throw std::invalid_argument("state size does not match the instance");
        return energy(i.model, s);
      })
      .def("verify", [](const PlantedInstance& i) { return verify_plant(i).ok(); })
      .def("to_json", [](const PlantedInstance& i) { return instance_to_json(i).dump(); })
      .def_static("from_json", [](const std::string& s) { return instance_from_json(nlohmann::json::parse(s)); })
      .def("save", [](const PlantedInstance& i, const std::string& path) { write_instance(path, i); })
      .def_static("load", [](const std::string& path) { return read_instance(path); });

  m.def(
      "generate",
      [](std::size_t rows, std::size_t cols, std::size_t shore, double alpha, int l_min, int l_max,
         std::uint64_t seed) { return generate_instance(build_chimera(rows, cols, shore), {alpha, l_min, l_max, seed}); },
      py::arg("rows"), py::arg("cols"), py::arg("shore") = 4, py::arg("alpha") = 0.4, py::arg("l_min") = 4,
      py::arg("l_max") = 8, py::arg("seed") = 0);

  m.def(
      "chimera_edges",
      [](std::size_t rows, std::size_t cols, std::size_t shore) {
        std::vector<std::pair<NodeId, NodeId>> out;
        for (const auto& e : build_chimera(rows, cols, shore).edges()) out.emplace_back(e.u, e.v);
        return out;
      },
      py::arg("rows"), py::arg("cols"), py::arg("shore") = 4);

  m.def("default_config", [] { return config_to_json(RunConfig{}).dump(); });

  m.def(
      "run_trials",
      [](const std::string& config, const std::vector<std::pair<std::string, PlantedInstance>>& instances) {
        const auto cfg = config_from_json(nlohmann::json::parse(config));
        std::vector<InstanceEntry> entries;
        for (const auto& [id, inst] : instances) entries.push_back({id, inst});
        std::vector<std::string> lines;
        {
          py::gil_scoped_release release;
          run_trials(cfg, entries, [&](const TrialRecord& r) { lines.push_back(record_to_line(r)); });
        }
        return lines;
      },
      py::arg("config"), py::arg("instances"));

  m.def(
      "report_csv",
      [](const std::vector<std::string>& lines, double p_target, double confidence, std::size_t resamples,
         std::uint64_t seed) {
        const auto records = parse_records(lines);
        return report_csv(build_report(records, {p_target, confidence, resamples, seed}));
      },
      py::arg("records"), py::arg("p_target") = 0.99, py::arg("confidence") = 0.95, py::arg("resamples") = 10'000,
      py::arg("seed") = 0);

  m.def("n_repetitions", &n_repetitions, py::arg("p_success"), py::arg("p_target") = 0.99);
  m.def("time_to_solution", &time_to_solution, py::arg("tau"), py::arg("p_success"), py::arg("p_target") = 0.99);

  m.def(
      "bootstrap_ci",
      [](const std::vector<std::pair<std::uint64_t, std::uint64_t>>& counts, double tau, double p_target,
         std::size_t resamples, double confidence, std::uint64_t seed) {
        const auto ci = bootstrap_ci(to_stats(counts, tau), p_target, tau, resamples, confidence, seed);
        return std::make_pair(ci.low, ci.high);
      },
      py::arg("counts"), py::arg("tau"), py::arg("p_target") = 0.99, py::arg("resamples") = 10'000,
      py::arg("confidence") = 0.95, py::arg("seed") = 0);
}
