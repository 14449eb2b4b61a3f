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

#include "pbitsim/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

namespace pbitsim {

using nlohmann::json;

namespace {

constexpr std::uint64_t kPlanStream = 0x706C616E;

std::string_view scan_name(ScanOrder s) { return s == ScanOrder::Ascending ? "ascending" : "random"; }
std::string_view mode_name(AsyncMode m) { return m == AsyncMode::TimeDriven ? "time" : "sweep"; }

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

AnnealSchedule RunConfig::schedule() const {
  return AnnealSchedule::linear(beta_start, beta_end, beta_step, sweeps_per_stage);
}

std::vector<ClockSpec> RunConfig::clock_bank() const {
  auto bank = clocks.empty() ? default_rosc_bank(n_clocks, f_lo_mhz, f_hi_mhz) : clocks;
  if (mean_match) bank = mean_matched(std::move(bank), mean_target_mhz);
  if (jitter_sigma > 0.0) {
    for (auto& c : bank) c.jitter_sigma = jitter_sigma;
  }
  return bank;
}

std::pair<double, std::string> RunConfig::tau() const {
  const auto total = static_cast<double>(schedule().total_sweeps());
  switch (sampler) {
    case SamplerKind::Serial:
      return {total, "sweeps"};
    case SamplerKind::Chromatic:
      return {tau_ns.value_or(total * 1000.0 / f_clock_mhz), "ns"};
    case SamplerKind::Async:
      return {tau_ns.value_or(total * 1000.0 / mean_frequency_mhz(clock_bank())), "ns"};
  }
  return {total, "sweeps"};
}

json config_to_json(const RunConfig& c) {
  json clocks = json::array();
  for (const auto& k : c.clocks) {
    clocks.push_back({{"id", k.id}, {"frequency_mhz", k.frequency_mhz}, {"phase_ns", k.phase_ns},
                      {"jitter_sigma", k.jitter_sigma}});
  }
  return json{
      {"schema_version", kSchemaVersion},
      {"sampler", std::string(to_string(c.sampler))},
      {"schedule",
       {{"beta_start", c.beta_start}, {"beta_end", c.beta_end}, {"beta_step", c.beta_step},
        {"sweeps_per_stage", c.sweeps_per_stage}}},
      {"clock_bank",
       {{"n_clocks", c.n_clocks},
        {"f_lo_mhz", c.f_lo_mhz},
        {"f_hi_mhz", c.f_hi_mhz},
        {"clocks", clocks},
        {"mean_match", c.mean_match},
        {"mean_target_mhz", c.mean_target_mhz},
        {"jitter_sigma", c.jitter_sigma}}},
      {"hazards",
       {{"synapse_delay_ns", c.hazards.synapse_delay_ns},
        {"simultaneity_window_ns", c.hazards.simultaneity_window_ns}}},
      {"async_mode", std::string(mode_name(c.async_mode))},
      {"f_clock_mhz", c.f_clock_mhz},
      {"tau_ns", c.tau_ns ? json(*c.tau_ns) : json(nullptr)},
      {"trials", c.trials},
      {"seed", c.seed},
      {"lfsr", c.lfsr},
      {"fixed_point", {{"enabled", c.fixed_point}, {"total_bits", c.fixed_total_bits}, {"frac_bits", c.fixed_frac_bits}}},
      {"scan", std::string(scan_name(c.scan))},
      {"stop_on_success", c.stop_on_success},
      {"success_tolerance", {{"relative", c.success_rel_tol}, {"absolute", c.success_abs_tol}}},
      {"threads", c.threads},
  };
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("run config: expected a JSON object");
  if (j.value("schema_version", kSchemaVersion) > kSchemaVersion) {
    throw FormatError("run config: schema_version is newer than supported");
  }
  RunConfig c;
  try {
    if (j.contains("sampler")) c.sampler = sampler_from_string(j.at("sampler").get<std::string>());
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      c.beta_start = s.value("beta_start", c.beta_start);
      c.beta_end = s.value("beta_end", c.beta_end);
      c.beta_step = s.value("beta_step", c.beta_step);
      c.sweeps_per_stage = s.value("sweeps_per_stage", c.sweeps_per_stage);
    }
    if (j.contains("clock_bank")) {
      const auto& b = j.at("clock_bank");
      c.n_clocks = b.value("n_clocks", c.n_clocks);
      c.f_lo_mhz = b.value("f_lo_mhz", c.f_lo_mhz);
      c.f_hi_mhz = b.value("f_hi_mhz", c.f_hi_mhz);
      c.mean_match = b.value("mean_match", c.mean_match);
      c.mean_target_mhz = b.value("mean_target_mhz", c.mean_target_mhz);
      c.jitter_sigma = b.value("jitter_sigma", c.jitter_sigma);
      if (b.contains("clocks")) {
        for (const auto& k : b.at("clocks")) {
          ClockSpec spec;
          spec.id = k.value("id", static_cast<std::uint32_t>(c.clocks.size()));
          spec.frequency_mhz = k.at("frequency_mhz").get<double>();
          spec.phase_ns = k.value("phase_ns", 0.0);
          spec.jitter_sigma = k.value("jitter_sigma", 0.0);
          c.clocks.push_back(spec);
        }
      }
    }
    if (j.contains("hazards")) {
      const auto& h = j.at("hazards");
      c.hazards.synapse_delay_ns = h.value("synapse_delay_ns", c.hazards.synapse_delay_ns);
      c.hazards.simultaneity_window_ns = h.value("simultaneity_window_ns", c.hazards.simultaneity_window_ns);
    }
    if (j.contains("async_mode")) {
      const auto m = j.at("async_mode").get<std::string>();
      if (m != "time" && m != "sweep") throw FormatError("run config: async_mode must be 'time' or 'sweep'");
      c.async_mode = m == "time" ? AsyncMode::TimeDriven : AsyncMode::SweepDriven;
    }
    c.f_clock_mhz = j.value("f_clock_mhz", c.f_clock_mhz);
    if (j.contains("tau_ns") && !j.at("tau_ns").is_null()) c.tau_ns = j.at("tau_ns").get<double>();
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.lfsr = j.value("lfsr", c.lfsr);
    if (j.contains("fixed_point")) {
      const auto& f = j.at("fixed_point");
      c.fixed_point = f.value("enabled", c.fixed_point);
      c.fixed_total_bits = f.value("total_bits", c.fixed_total_bits);
      c.fixed_frac_bits = f.value("frac_bits", c.fixed_frac_bits);
    }
    if (j.contains("scan")) {
      const auto s = j.at("scan").get<std::string>();
      if (s != "ascending" && s != "random") throw FormatError("run config: scan must be 'ascending' or 'random'");
      c.scan = s == "ascending" ? ScanOrder::Ascending : ScanOrder::RandomPermutation;
    }
    c.stop_on_success = j.value("stop_on_success", c.stop_on_success);
    if (j.contains("success_tolerance")) {
      c.success_rel_tol = j.at("success_tolerance").value("relative", c.success_rel_tol);
      c.success_abs_tol = j.at("success_tolerance").value("absolute", c.success_abs_tol);
    }
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    throw FormatError(std::string("run config: ") + e.what());
  }
  if (c.trials < 1) throw FormatError("run config: trials must be at least 1");
  return c;
}

ClockPlan instance_clock_plan(const RunConfig& cfg, const Graph& g, std::size_t index) {
  Rng rng(mix_seed(cfg.seed ^ kPlanStream, index));
  return assign_clocks(g, cfg.clock_bank(), rng);
}

TrialRecord run_trial(const RunConfig& cfg, const InstanceEntry& entry, std::size_t index, std::uint64_t trial) {
  const auto& inst = entry.instance;
  TrialRecord rec;
  rec.instance_id = entry.id;
  if (const auto& shape = inst.graph().chimera_shape()) {
    rec.rows = shape->rows;
    rec.cols = shape->cols;
    rec.shore = shape->shore;
  }
  rec.spins = inst.graph().num_nodes();
  rec.trial = trial;
  rec.ground_energy = inst.ground_energy;
  rec.result.sampler = cfg.sampler;
  rec.result.seed = trial_seed(cfg.seed, index, trial);
  try {
    std::tie(rec.tau, rec.tau_unit) = cfg.tau();
    SamplerOptions opt;
    opt.seed = rec.result.seed;
    opt.rng = cfg.lfsr ? RngKind::Lfsr : RngKind::SplitMix;
    opt.activation.fixed_point = cfg.fixed_point;
    if (cfg.fixed_point) opt.activation.table = FixedActivation(cfg.fixed_total_bits, cfg.fixed_frac_bits);
    opt.target_energy = inst.ground_energy;
    opt.stop_on_success = cfg.stop_on_success;
    opt.success_rel_tol = cfg.success_rel_tol;
    opt.success_abs_tol = cfg.success_abs_tol;
    const auto schedule = cfg.schedule();

    switch (cfg.sampler) {
      case SamplerKind::Serial:
        rec.result = run_serial_gibbs(inst.model, schedule, opt, cfg.scan);
        break;
      case SamplerKind::Chromatic:
        rec.clock_mhz = cfg.f_clock_mhz;
        rec.result = run_chromatic(inst.model, schedule, cfg.f_clock_mhz, opt, rec.tau);
        break;
      case SamplerKind::Async: {
        const auto plan = instance_clock_plan(cfg, inst.graph(), index);
        rec.clock_mhz = plan.activation_rate_per_ns() * 1000.0 / static_cast<double>(rec.spins);
        AsyncOptions a;
        a.hazards = cfg.hazards;
        a.mode = cfg.async_mode;
        a.horizon_ns = rec.tau;
        if (cfg.async_mode == AsyncMode::SweepDriven && !cfg.tau_ns) a.horizon_ns.reset();
        rec.result = run_async(inst.model, schedule, plan, opt, a);
        break;
      }
    }
    rec.result.final_state.clear();
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

std::size_t run_trials(const RunConfig& cfg, std::span<const InstanceEntry> instances,
                       const std::function<void(const TrialRecord&)>& sink) {
  std::size_t failures = 0;
  const std::size_t threads = std::max<std::size_t>(1, cfg.threads);
  std::vector<TrialRecord> records(cfg.trials);
  for (std::size_t k = 0; k < instances.size(); ++k) {
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (std::uint64_t t = next++; t < cfg.trials; t = next++) records[t] = run_trial(cfg, instances[k], k, t);
    };
    if (threads == 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < std::min<std::uint64_t>(threads, cfg.trials); ++w) pool.emplace_back(work);
      for (auto& th : pool) th.join();
    }
    for (const auto& r : records) {
      if (r.error) ++failures;
      sink(r);
    }
  }
  return failures;
}

std::vector<ReportRow> build_report(std::span<const TrialRecord> records, const ReportOptions& options) {
  if (records.empty()) throw std::invalid_argument("no trial records");

  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::string>;
  struct Group {
    ReportRow row;
    std::map<std::string, InstanceStats> per_instance;
    double clock_sum = 0.0;
    std::uint64_t clock_count = 0;
  };
  std::map<Key, Group> groups;
  for (const auto& rec : records) {
    const Key key{rec.spins, rec.rows, rec.cols, rec.shore, std::string(to_string(rec.result.sampler))};
    auto [it, fresh] = groups.try_emplace(key);
    auto& g = it->second;
    if (fresh) {
      g.row.rows = rec.rows;
      g.row.cols = rec.cols;
      g.row.shore = rec.shore;
      g.row.spins = rec.spins;
      g.row.sampler = rec.result.sampler;
      g.row.tau = rec.tau;
      g.row.tau_unit = rec.tau_unit;
    } else if (g.row.tau_unit != rec.tau_unit ||
               std::abs(g.row.tau - rec.tau) > 1e-9 * std::max(1.0, std::abs(g.row.tau))) {
      throw std::invalid_argument("records of one size and sampler disagree on tau");
    }
    auto& stats = g.per_instance[rec.instance_id];
    stats.instance_id = rec.instance_id;
    stats.tau = rec.tau;
    if (rec.error) {
      ++g.row.failed_trials;
      continue;
    }
    ++stats.trials;
    ++g.row.trials;
    if (rec.result.success) ++stats.successes;
    g.clock_sum += rec.clock_mhz;
    ++g.clock_count;
  }

  std::vector<ReportRow> rows;
  std::size_t index = 0;
  for (auto& [key, g] : groups) {
    std::vector<InstanceStats> stats;
    for (auto& [id, s] : g.per_instance) {
      if (s.trials > 0) stats.push_back(s);
    }
    auto row = g.row;
    row.instances = stats.size();
    const double mean_clock = g.clock_count ? g.clock_sum / static_cast<double>(g.clock_count) : 0.0;
    row.flips = flips_per_second(row.sampler, row.spins, mean_clock);
    if (!stats.empty()) {
      row.estimate = aggregate_size(stats, options.p_target, row.tau);
      row.ci = bootstrap_ci(stats, options.p_target, row.tau, options.resamples, options.confidence,
                            mix_seed(options.seed, index));
    } else {
      row.estimate.tts.reset();
    }
    rows.push_back(row);
    ++index;
  }
  return rows;
}

std::string report_csv(std::span<const ReportRow> rows) {
  std::ostringstream out;
  out << "size_tiles,spins,sampler,tau_unit,tau,mean_pS,tts,ci_lo,ci_hi,censored\n";
  for (const auto& r : rows) {
    out << r.size_tiles() << ',' << r.spins << ',' << to_string(r.sampler) << ',' << r.tau_unit << ','
        << format_number(r.tau) << ',' << format_number(r.estimate.mean_p_success) << ','
        << (r.estimate.tts ? format_number(*r.estimate.tts) : "inf") << ',' << format_number(r.ci.low) << ','
        << format_number(r.ci.high) << ',' << r.estimate.censored_instances << '\n';
  }
  return out.str();
}

std::string report_table(std::span<const ReportRow> rows) {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-8s %6s %-10s %5s %7s %8s %14s %14s %14s %5s %12s\n", "size", "spins",
                "sampler", "inst", "trials", "mean_pS", "TTS", "CI low", "CI high", "cens", "flips/unit");
  out << line;
  for (const auto& r : rows) {
    const std::string unit = r.tau_unit;
    std::snprintf(line, sizeof line, "%-8s %6zu %-10s %5zu %7" PRIu64 " %8.4f %11s %-2s %11s %-2s %11s %-2s %5zu %9.3g/%s%s\n",
                  r.size_tiles().c_str(), r.spins, std::string(to_string(r.sampler)).c_str(), r.instances, r.trials,
                  r.estimate.mean_p_success, r.estimate.tts ? format_number(*r.estimate.tts).c_str() : "inf",
                  unit.c_str(), format_number(r.ci.low).c_str(), unit.c_str(), format_number(r.ci.high).c_str(),
                  unit.c_str(), r.estimate.censored_instances, r.flips.attempted_flips,
                  r.flips.per == "second" ? "s" : "step", r.ci.censoring_flag ? "  [censored>1%]" : "");
    out << line;
  }
  return out.str();
}

}  // namespace pbitsim
