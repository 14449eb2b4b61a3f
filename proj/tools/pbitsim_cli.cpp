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

// pbitsim: generate planted instances, run sampler trials, build TTS reports.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pbitsim/harness.hpp"
#include "pbitsim/io.hpp"
#include "pbitsim/planted.hpp"

namespace fs = std::filesystem;
using namespace pbitsim;

namespace {

fs::path default_out_dir() {
  if (const char* env = std::getenv("PBITSIM_OUT_DIR"); env && *env) return env;
  return ".";
}

ChimeraShape parse_tiles(const std::string& text, std::size_t shore) {
  const auto x = text.find('x');
  if (x == std::string::npos) throw CLI::ValidationError("--tiles", "expected ROWSxCOLS, got '" + text + "'");
  ChimeraShape s;
  s.rows = std::stoul(text.substr(0, x));
  s.cols = std::stoul(text.substr(x + 1));
  s.shore = shore;
  if (s.rows == 0 || s.cols == 0) throw CLI::ValidationError("--tiles", "tile counts must be positive");
  return s;
}

std::pair<int, int> parse_loops(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw CLI::ValidationError("--loops", "expected MIN:MAX");
  return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs, const std::string& ext) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::directory_iterator(in)) {
        if (e.is_regular_file() && e.path().extension() == ext) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

int cmd_gen(const std::vector<std::string>& tiles, std::size_t shore, double alpha, const std::string& loops,
            std::size_t count, std::uint64_t seed, const std::string& out_dir) {
  const auto [l_min, l_max] = parse_loops(loops);
  const fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
  fs::create_directories(dir);
  for (const auto& t : tiles) {
    const auto shape = parse_tiles(t, shore);
    const Graph g = build_chimera(shape);
    for (std::size_t k = 0; k < count; ++k) {
      PlantParams p{alpha, l_min, l_max, seed + k};
      PlantedInstance inst;
      try {
        inst = generate_instance(g, p);
      } catch (const std::exception& e) {
        std::cerr << "gen: " << t << " instance " << k << ": " << e.what() << '\n';
        return 1;
      }
      const auto name = "inst_" + std::to_string(shape.rows) + "x" + std::to_string(shape.cols) + "_" +
                        std::to_string(k) + ".json";
      write_instance(dir / name, inst);
    }
    std::cout << "wrote " << count << " instances of " << t << " (" << shape.num_nodes() << " spins) to "
              << dir.string() << '\n';
  }
  return 0;
}

int cmd_verify(const std::vector<std::string>& inputs) {
  int bad = 0;
  for (const auto& path : expand_inputs(inputs, ".json")) {
    try {
      const auto inst = read_instance(path);
      const auto rep = verify_plant(inst);
      std::cout << (rep.ok() ? "ok   " : "FAIL ") << path.string() << "  clauses=" << inst.clauses.size()
                << " E_ground=" << inst.ground_energy << " frustration=" << rep.frustration_ok
                << " couplings=" << rep.couplings_match << " energy=" << rep.energy_match << '\n';
      if (!rep.ok()) ++bad;
    } catch (const std::exception& e) {
      std::cout << "FAIL " << path.string() << "  " << e.what() << '\n';
      ++bad;
    }
  }
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete-event p-bit Ising machine simulator and TTS benchmark"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate planted frustrated-loop instances on Chimera lattices");
  std::vector<std::string> tiles{"10x10"};
  std::size_t shore = 4;
  double alpha = 0.4;
  std::string loops = "4:8";
  std::size_t count = 1;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--tiles", tiles, "Lattice sizes as ROWSxCOLS (repeatable)")->delimiter(',');
  gen->add_option("--shore", shore, "Nodes per tile side")->capture_default_str();
  gen->add_option("--alpha", alpha, "Clause density (clauses per node)")->capture_default_str();
  gen->add_option("--loops", loops, "Loop length bounds MIN:MAX")->capture_default_str();
  gen->add_option("--count", count, "Instances per size")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Base seed; instance k uses seed + k")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory (default $PBITSIM_OUT_DIR or .)");

  // run
  auto* run = app.add_subcommand("run", "Run sampler trials on instance files");
  std::vector<std::string> run_inputs;
  std::string config_path, results_path, sampler, schedule_text, mode, scan;
  std::optional<std::uint64_t> trials, run_seed;
  std::optional<std::size_t> threads, n_clocks;
  std::optional<double> tau_ns, f_clock, f_lo, f_hi, delay, window, jitter;
  bool mean_match = false, lfsr = false, fixed = false, full_anneal = false, dump_config = false;
  run->add_option("inputs", run_inputs, "Instance files or directories");
  run->add_option("--config", config_path, "Run configuration JSON (flags override it)");
  run->add_option("--sampler", sampler, "serial | chromatic | async");
  run->add_option("--trials", trials, "Trials per instance");
  run->add_option("--seed", run_seed, "Base seed");
  run->add_option("--threads", threads, "Worker threads");
  run->add_option("--schedule", schedule_text, "BETA0:BETA1:STEP:SWEEPS");
  run->add_option("--tau-ns", tau_ns, "Model-time annealing length in ns");
  run->add_option("--f-clock", f_clock, "Synchronous clock frequency in MHz");
  run->add_option("--clocks", n_clocks, "Number of ring-oscillator clocks");
  run->add_option("--f-lo", f_lo, "Lowest clock frequency in MHz");
  run->add_option("--f-hi", f_hi, "Highest clock frequency in MHz");
  run->add_flag("--mean-match", mean_match, "Rescale the clock bank to a 9.375 MHz mean");
  run->add_option("--jitter", jitter, "Per-period Gaussian jitter (fraction of period)");
  run->add_option("--synapse-delay", delay, "Field propagation delay in ns");
  run->add_option("--sim-window", window, "Simultaneity window in ns");
  run->add_option("--mode", mode, "Asynchronous beta advance: time | sweep");
  run->add_flag("--lfsr", lfsr, "Use 32-bit LFSR random streams");
  run->add_flag("--fixed-point", fixed, "Use the 10-bit fixed-point activation");
  run->add_option("--scan", scan, "Serial scan order: ascending | random");
  run->add_flag("--full-anneal", full_anneal, "Keep annealing after the first success");
  run->add_option("--out", results_path, "Results file (JSON lines; default $PBITSIM_OUT_DIR/results.jsonl)");
  run->add_flag("--dump-config", dump_config, "Print the effective configuration and exit");

  // report
  auto* report = app.add_subcommand("report", "Aggregate results into a TTS report");
  std::vector<std::string> report_inputs;
  ReportOptions ropt;
  std::string report_out;
  report->add_option("results", report_inputs, "Results files")->required();
  report->add_option("--p-target", ropt.p_target, "Target probability p_R")->capture_default_str();
  report->add_option("--confidence", ropt.confidence, "Bootstrap confidence level")->capture_default_str();
  report->add_option("--resamples", ropt.resamples, "Bootstrap resamples")->capture_default_str();
  report->add_option("--seed", ropt.seed, "Bootstrap seed")->capture_default_str();
  report->add_option("--out", report_out, "CSV output path (default: stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "Re-check archived instance files");
  std::vector<std::string> verify_inputs;
  verify->add_option("inputs", verify_inputs, "Instance files or directories")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(tiles, shore, alpha, loops, count, gen_seed, gen_out);
    if (verify->parsed()) return cmd_verify(verify_inputs);

    if (run->parsed()) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot read " + config_path);
        cfg = config_from_json(nlohmann::json::parse(in));
      }
      if (!sampler.empty()) cfg.sampler = sampler_from_string(sampler);
      if (trials) cfg.trials = *trials;
      if (run_seed) cfg.seed = *run_seed;
      if (threads) cfg.threads = *threads;
      if (!schedule_text.empty()) {
        double b0, b1, step;
        unsigned long long sweeps;
        if (std::sscanf(schedule_text.c_str(), "%lf:%lf:%lf:%llu", &b0, &b1, &step, &sweeps) != 4) {
          throw std::invalid_argument("--schedule expects BETA0:BETA1:STEP:SWEEPS");
        }
        cfg.beta_start = b0;
        cfg.beta_end = b1;
        cfg.beta_step = step;
        cfg.sweeps_per_stage = sweeps;
      }
      if (tau_ns) cfg.tau_ns = *tau_ns;
      if (f_clock) cfg.f_clock_mhz = *f_clock;
      if (n_clocks) cfg.n_clocks = *n_clocks;
      if (f_lo) cfg.f_lo_mhz = *f_lo;
      if (f_hi) cfg.f_hi_mhz = *f_hi;
      if (mean_match) cfg.mean_match = true;
      if (jitter) cfg.jitter_sigma = *jitter;
      if (delay) cfg.hazards.synapse_delay_ns = *delay;
      if (window) cfg.hazards.simultaneity_window_ns = *window;
      if (!mode.empty()) {
        if (mode != "time" && mode != "sweep") throw std::invalid_argument("--mode must be time or sweep");
        cfg.async_mode = mode == "time" ? AsyncMode::TimeDriven : AsyncMode::SweepDriven;
      }
      if (lfsr) cfg.lfsr = true;
      if (fixed) cfg.fixed_point = true;
      if (!scan.empty()) {
        if (scan != "ascending" && scan != "random") throw std::invalid_argument("--scan must be ascending or random");
        cfg.scan = scan == "ascending" ? ScanOrder::Ascending : ScanOrder::RandomPermutation;
      }
      if (full_anneal) cfg.stop_on_success = false;
      if (cfg.trials < 1) throw std::invalid_argument("--trials must be at least 1");
      if (dump_config) {
        std::cout << config_to_json(cfg).dump(2) << '\n';
        return 0;
      }

      std::vector<InstanceEntry> instances;
      for (const auto& path : expand_inputs(run_inputs, ".json")) {
        instances.push_back({path.stem().string(), read_instance(path)});
      }
      if (instances.empty()) throw std::invalid_argument("no instance files given");

      const fs::path out_path = results_path.empty() ? default_out_dir() / "results.jsonl" : fs::path(results_path);
      if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path.string());
      std::size_t written = 0;
      const auto failures = run_trials(cfg, instances, [&](const TrialRecord& r) {
        out << record_to_line(r) << '\n';
        out.flush();
        ++written;
      });
      std::cout << "wrote " << written << " records to " << out_path.string();
      if (failures) std::cout << " (" << failures << " failed)";
      std::cout << '\n';
      return failures == 0 ? 0 : 2;
    }

    if (report->parsed()) {
      std::vector<TrialRecord> records;
      for (const auto& path : report_inputs) {
        auto more = read_records(path);
        records.insert(records.end(), more.begin(), more.end());
      }
      if (records.empty()) {
        std::cerr << "report: no records\n";
        return 1;
      }
      const auto rows = build_report(records, ropt);
      const auto csv = report_csv(rows);
      if (report_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream out(report_out);
        if (!out) throw std::runtime_error("cannot write " + report_out);
        out << csv;
      }
      std::cerr << report_table(rows);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
