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

#include "pbitsim/samplers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace pbitsim {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::Serial:
      return "serial";
    case SamplerKind::Chromatic:
      return "chromatic";
    case SamplerKind::Async:
      return "async";
  }
  return "unknown";
}

SamplerKind sampler_from_string(std::string_view name) {
  if (name == "serial") return SamplerKind::Serial;
  if (name == "chromatic") return SamplerKind::Chromatic;
  if (name == "async") return SamplerKind::Async;
  throw std::invalid_argument("unknown sampler '" + std::string(name) + "'");
}

double success_threshold(double target_energy, double rel_tol, double abs_tol) {
  return target_energy + rel_tol * std::abs(target_energy) + abs_tol;
}

namespace {

// Stream ids under the trial seed.
constexpr std::uint64_t kInitStream = 1;
constexpr std::uint64_t kPbitStream = 2;
constexpr std::uint64_t kScanStream = 3;
constexpr std::uint64_t kJitterStream = 4;
constexpr std::uint64_t kPhaseStream = 5;

SpinState initial_state(const IsingModel& model, const SamplerOptions& options) {
  if (!options.initial_state.empty()) {
    if (options.initial_state.size() != model.num_spins()) {
      throw std::invalid_argument("initial state size mismatch");
    }
    return options.initial_state;
  }
  Rng rng(mix_seed(options.seed, kInitStream));
  SpinState state(model.num_spins());
  for (auto& s : state) s = static_cast<Spin>(rng.sign());
  return state;
}

// Incrementally tracked energy with exact resynchronization near the target,
// so floating-point drift cannot fake or hide a success.
class EnergyTracker {
 public:
  EnergyTracker(const IsingModel& model, std::span<const Spin> state, const SamplerOptions& options)
      : model_(model), target_(options.target_energy), current_(energy(model, state)), best_(current_) {
    if (target_) {
      threshold_ = success_threshold(*target_, options.success_rel_tol, options.success_abs_tol);
      resync_below_ = *target_ + 1e-6 * std::max(1.0, std::abs(*target_));
      success_ = current_ <= threshold_;
    }
  }

  void add(double delta) { current_ += delta; }

  // Returns true on the first success.
  bool observe(std::span<const Spin> state) {
    if (target_ && current_ <= resync_below_) current_ = energy(model_, state);
    best_ = std::min(best_, current_);
    if (target_ && !success_ && current_ <= threshold_) {
      success_ = true;
      return true;
    }
    return false;
  }

  void resync(std::span<const Spin> state) { current_ = energy(model_, state); }

  bool success() const { return success_; }
  double best() const { return best_; }
  double current() const { return current_; }

 private:
  const IsingModel& model_;
  std::optional<double> target_;
  double threshold_ = 0.0;
  double resync_below_ = 0.0;
  double current_;
  double best_;
  bool success_ = false;
};

void finish(TrialResult& r, const EnergyTracker& tracker, SpinState state) {
  r.success = tracker.success();
  r.best_energy = tracker.best();
  r.final_energy = tracker.current();
  r.final_state = std::move(state);
}

}  // namespace

TrialResult run_serial_gibbs(const IsingModel& model, const AnnealSchedule& schedule,
                             const SamplerOptions& options, ScanOrder order) {
  const std::size_t n = model.num_spins();
  SpinState state = initial_state(model, options);
  PbitRandom rng(n, mix_seed(options.seed, kPbitStream), options.rng);
  Rng scan_rng(mix_seed(options.seed, kScanStream));
  std::vector<NodeId> scan(n);
  std::iota(scan.begin(), scan.end(), NodeId{0});

  TrialResult result;
  result.sampler = SamplerKind::Serial;
  result.seed = options.seed;
  EnergyTracker tracker(model, state, options);
  if (tracker.success()) result.first_success_sweeps = 0.0;

  std::uint64_t sweeps = 0;
  bool done = options.stop_on_success && tracker.success();
  for (const auto& stage : schedule.stages()) {
    for (std::uint64_t s = 0; s < stage.sweeps && !done; ++s) {
      if (order == ScanOrder::RandomPermutation) {
        for (std::size_t k = n; k > 1; --k) std::swap(scan[k - 1], scan[scan_rng.uniform_index(k)]);
      }
      for (std::size_t k = 0; k < n; ++k) {
        const NodeId i = scan[k];
        const double field = local_field(model, state, i);
        const Spin next = options.activation(field, stage.beta, rng, i);
        ++result.updates;
        if (options.trace) options.trace->push_back({i, next, field});
        if (next == state[i]) continue;
        tracker.add(2.0 * state[i] * field);
        state[i] = next;
        ++result.flips;
        if (tracker.observe(state)) {
          result.first_success_sweeps = static_cast<double>(sweeps) + static_cast<double>(k + 1) / static_cast<double>(n);
          if (options.stop_on_success) {
            done = true;
            break;
          }
        }
      }
      if (!done) ++sweeps;
      if (options.on_sweep) options.on_sweep(state);
    }
    tracker.resync(state);
    if (done) break;
  }
  result.sweeps_executed = static_cast<double>(result.updates) / static_cast<double>(std::max<std::size_t>(n, 1));
  finish(result, tracker, std::move(state));
  return result;
}

TrialResult run_chromatic(const IsingModel& model, const AnnealSchedule& schedule, double f_clock_mhz,
                          const SamplerOptions& options, std::optional<double> horizon_ns) {
  if (!(f_clock_mhz > 0.0)) throw std::invalid_argument("clock frequency must be positive");
  const auto colors = two_coloring(model.graph());
  if (!colors) throw std::invalid_argument("chromatic sampling needs a bipartite graph");
  std::array<std::vector<NodeId>, 2> blocks;
  for (NodeId i = 0; i < model.num_spins(); ++i) blocks[static_cast<int>((*colors)[i])].push_back(i);

  const std::size_t n = model.num_spins();
  SpinState state = initial_state(model, options);
  PbitRandom rng(n, mix_seed(options.seed, kPbitStream), options.rng);

  // One sweep (two blocks) per clock period.
  const double period_ns = 1000.0 / f_clock_mhz;
  const std::uint64_t total_sweeps =
      horizon_ns ? static_cast<std::uint64_t>(std::floor(*horizon_ns / period_ns + 1e-9)) : schedule.total_sweeps();
  const double last_progress = static_cast<double>(schedule.total_sweeps());

  TrialResult result;
  result.sampler = SamplerKind::Chromatic;
  result.seed = options.seed;
  EnergyTracker tracker(model, state, options);
  if (tracker.success()) {
    result.first_success_sweeps = 0.0;
    result.first_success_ns = 0.0;
  }

  std::uint64_t sweep = 0;
  bool done = options.stop_on_success && tracker.success();
  std::size_t stage = 0;
  for (; sweep < total_sweeps && !done; ++sweep) {
    const std::size_t now = schedule.stage_at(std::min(static_cast<double>(sweep), last_progress));
    if (now != stage) {
      tracker.resync(state);
      stage = now;
    }
    const double beta = schedule.stages()[stage].beta;
    for (int b = 0; b < 2 && !done; ++b) {
      // Same-color p-bits share no edges, so updating in place reads the
      // frozen pre-block values of every neighbor.
      for (NodeId i : blocks[b]) {
        const double field = local_field(model, state, i);
        const Spin next = options.activation(field, beta, rng, i);
        ++result.updates;
        if (options.trace) options.trace->push_back({i, next, field});
        if (next == state[i]) continue;
        tracker.add(2.0 * state[i] * field);
        state[i] = next;
        ++result.flips;
      }
      if (tracker.observe(state)) {
        const double blocks_done = 2.0 * static_cast<double>(sweep) + b + 1;
        result.first_success_sweeps = blocks_done / 2.0;
        result.first_success_ns = blocks_done * period_ns / 2.0;
        done = options.stop_on_success;
      }
    }
    if (options.on_sweep) options.on_sweep(state);
  }
  result.sweeps_executed = static_cast<double>(result.updates) / static_cast<double>(std::max<std::size_t>(n, 1));
  result.model_time_ns = done ? *result.first_success_ns : static_cast<double>(total_sweeps) * period_ns;
  tracker.resync(state);
  finish(result, tracker, std::move(state));
  return result;
}

TrialResult run_async(const IsingModel& model, const AnnealSchedule& schedule, const ClockPlan& plan_in,
                      const SamplerOptions& options, const AsyncOptions& async) {
  const Graph& g = model.graph();
  const std::size_t n = model.num_spins();
  const auto& hz = async.hazards;
  if (!(hz.synapse_delay_ns >= 0.0) || !(hz.simultaneity_window_ns >= 0.0)) {
    throw std::invalid_argument("hazard windows must be nonnegative");
  }
  ClockPlan plan = plan_in;
  if (async.randomize_phases) {
    Rng phase_rng(mix_seed(options.seed, kPhaseStream));
    randomize_phases(plan.clocks, phase_rng);
  }
  validate_plan(g, plan);

  const double sweep_rate = plan.sweep_rate_per_ns();
  const auto stages = schedule.stages();
  const bool time_driven = async.mode == AsyncMode::TimeDriven;

  // Stage k ends at boundary[k] (ns in time-driven mode, activations otherwise).
  std::vector<double> boundary;
  for (std::size_t k = 1; k < stages.size(); ++k) {
    const auto start = static_cast<double>(schedule.stage_start(k));
    boundary.push_back(time_driven ? start / sweep_rate : start * static_cast<double>(n));
  }
  const auto activation_budget = static_cast<std::uint64_t>(schedule.total_sweeps()) * n;
  double horizon = async.horizon_ns.value_or(static_cast<double>(schedule.total_sweeps()) / sweep_rate);
  if (!time_driven && !async.horizon_ns) {
    double max_period = 0.0;
    for (const auto& c : plan.clocks) max_period = std::max(max_period, c.period_ns());
    // Enough edges for the activation budget even for the slowest clock.
    horizon = 2.0 * horizon + 2.0 * max_period * static_cast<double>(schedule.total_sweeps() + 1);
  }

  SpinState state = initial_state(model, options);
  PbitRandom rng(n, mix_seed(options.seed, kPbitStream), options.rng);
  ClockEventStream stream(plan, horizon, mix_seed(options.seed, kJitterStream));

  struct Change {
    double time_ns;
    Spin previous;
  };
  std::vector<std::vector<Change>> history(n);
  std::vector<double> last_activation(n, -std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> in_group(n, 0);

  struct Pending {
    double time_ns;
    NodeId node;
    Spin value;
  };
  std::vector<Pending> group;
  std::vector<std::pair<double, NodeId>> events;
  ActivationBatch batch;

  TrialResult result;
  result.sampler = SamplerKind::Async;
  result.seed = options.seed;
  EnergyTracker tracker(model, state, options);
  if (tracker.success()) {
    result.first_success_sweeps = 0.0;
    result.first_success_ns = 0.0;
  }

  auto read = [&](NodeId j, double at) -> Spin {
    auto& h = history[j];
    if (h.empty() || h.back().time_ns <= at) return state[j];
    Spin value = state[j];
    for (auto it = h.rbegin(); it != h.rend() && it->time_ns > at; ++it) value = it->previous;
    return value;
  };

  std::size_t stage = 0;
  std::uint64_t activations = 0;
  double last_time = 0.0;
  bool done = (options.stop_on_success && tracker.success()) || activation_budget == 0;

  while (!done && stream.next(batch)) {
    // Gather every activation inside the simultaneity window.
    events.clear();
    const double group_start = batch.time_ns;
    for (NodeId p : batch.pbits) events.emplace_back(batch.time_ns, p);
    double t_next = 0.0;
    while (hz.simultaneity_window_ns > 0.0 && stream.peek_time(t_next) &&
           t_next - group_start <= hz.simultaneity_window_ns) {
      stream.next(batch);
      for (NodeId p : batch.pbits) events.emplace_back(batch.time_ns, p);
    }
    if (!time_driven) {
      const auto remaining = activation_budget - activations;
      if (events.size() > remaining) events.resize(remaining);
    }
    for (const auto& [t, i] : events) in_group[i] = 1;

    group.clear();
    for (const auto& [t, i] : events) {
      const double progress = time_driven ? t : static_cast<double>(activations);
      while (stage < boundary.size() && progress >= boundary[stage]) {
        ++stage;
        tracker.resync(state);
      }
      const double read_at = t - hz.synapse_delay_ns;
      const auto nb = g.neighbors(i);
      const auto w = model.neighbor_weights(i);
      double field = model.biases()[i];
      bool collided = false;
      for (std::size_t k = 0; k < nb.size(); ++k) {
        const NodeId j = nb[k];
        if (in_group[j]) collided = true;
        Spin value = state[j];
        if (last_activation[j] > read_at) {
          ++result.stale_reads;
          value = read(j, read_at);
          if (value != state[j]) ++result.stale_values;
        }
        field += w[k] * value;
      }
      if (collided) ++result.collisions;
      const Spin next = options.activation(field, stages[stage].beta, rng, i);
      group.push_back({t, i, next});
      ++activations;
      ++result.updates;
      if (options.trace) options.trace->push_back({i, next, field});
    }

    for (const auto& p : group) {
      in_group[p.node] = 0;
      last_activation[p.node] = p.time_ns;
      auto& h = history[p.node];
      const double obsolete = group_start - hz.synapse_delay_ns;
      std::erase_if(h, [&](const Change& c) { return c.time_ns <= obsolete; });
      if (p.value == state[p.node]) continue;
      if (hz.synapse_delay_ns > 0.0) h.push_back({p.time_ns, state[p.node]});
      tracker.add(2.0 * state[p.node] * local_field(model, state, p.node));
      state[p.node] = p.value;
      ++result.flips;
    }
    last_time = events.empty() ? last_time : events.back().first;
    if (tracker.observe(state)) {
      result.first_success_ns = last_time;
      result.first_success_sweeps = static_cast<double>(activations) / static_cast<double>(n);
      done = options.stop_on_success;
    }
    if (!time_driven && activations >= activation_budget) break;
  }

  result.sweeps_executed = static_cast<double>(activations) / static_cast<double>(std::max<std::size_t>(n, 1));
  if (done && result.first_success_ns) {
    result.model_time_ns = *result.first_success_ns;
  } else {
    result.model_time_ns = time_driven ? horizon : last_time;
  }
  tracker.resync(state);
  finish(result, tracker, std::move(state));
  return result;
}

}  // namespace pbitsim
