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

#include <cmath>
#include <limits>

#include "doctest.h"
#include "pbitsim/bench.hpp"

using namespace pbitsim;

namespace {

// Reference N_r written from the textbook definition, no clamping shortcuts.
double reference_repetitions(double ps, double pr) { return std::max(1.0, std::log(1 - pr) / std::log(1 - ps)); }

std::vector<InstanceStats> synthetic(std::size_t n, double lo, double hi, double tau) {
  // Evenly spread p_S values with 1000 trials each.
  std::vector<InstanceStats> out;
  for (std::size_t k = 0; k < n; ++k) {
    const double p = lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    out.push_back({"i" + std::to_string(k), 1000, static_cast<std::uint64_t>(std::llround(p * 1000)), tau});
  }
  return out;
}

}  // namespace

TEST_CASE("repetitions") {
  CHECK(*n_repetitions(0.5, 0.99) == doctest::Approx(6.6439).epsilon(1e-4));
  CHECK(*n_repetitions(0.99, 0.99) == 1.0);
  CHECK(*n_repetitions(0.999, 0.99) == 1.0);
  CHECK(*n_repetitions(1.0, 0.99) == 1.0);
  CHECK_FALSE(n_repetitions(0.0, 0.99).has_value());
  for (double ps = 0.01; ps < 1.0; ps += 0.037) {
    CHECK(*n_repetitions(ps, 0.99) == doctest::Approx(reference_repetitions(ps, 0.99)).epsilon(1e-12));
  }
  CHECK_THROWS(n_repetitions(1.5, 0.99));
  CHECK_THROWS(n_repetitions(0.5, 1.0));
}

TEST_CASE("time to solution") {
  CHECK(*time_to_solution(1.4, 0.5, 0.99) == doctest::Approx(9.301).epsilon(1e-4));
  CHECK(*time_to_solution(1.4, 1.0, 0.99) == 1.4);
  CHECK_FALSE(time_to_solution(1.4, 0.0, 0.99).has_value());

  SUBCASE("monotone in p_S, linear in tau, clamped above p_R") {
    double last = std::numeric_limits<double>::infinity();
    for (double ps = 0.005; ps <= 1.0; ps += 0.005) {
      const double t = *time_to_solution(2.0, ps, 0.9);
      CHECK(t <= last);
      last = t;
      CHECK(*time_to_solution(6.0, ps, 0.9) == doctest::Approx(3.0 * t).epsilon(1e-13));
      if (ps >= 0.9) CHECK(t == 2.0);
    }
  }
}

TEST_CASE("aggregation averages p_S first") {
  const std::vector<InstanceStats> two{{"a", 10, 4, 1.0}, {"b", 10, 6, 1.0}};
  CHECK(*aggregate_size(two, 0.99, 1.0).tts == doctest::Approx(*time_to_solution(1.0, 0.5, 0.99)));
  const std::vector<InstanceStats> one{{"a", 50, 20, 3.0}};
  CHECK(*aggregate_size(one, 0.99, 3.0).tts == *time_to_solution(3.0, 0.4, 0.99));
  const std::vector<InstanceStats> solved{{"a", 5, 5, 2.0}, {"b", 5, 5, 2.0}};
  CHECK(*aggregate_size(solved, 0.99, 2.0).tts == 2.0);
  const std::vector<InstanceStats> failed{{"a", 5, 0, 2.0}, {"b", 5, 0, 2.0}};
  const auto est = aggregate_size(failed, 0.99, 2.0);
  CHECK_FALSE(est.tts.has_value());
  CHECK(est.censored_instances == 2);
}

TEST_CASE("nearest-rank percentiles") {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(nearest_rank(v, 0.025) == 1);
  CHECK(nearest_rank(v, 0.1) == 1);
  CHECK(nearest_rank(v, 0.11) == 2);
  CHECK(nearest_rank(v, 0.5) == 5);
  CHECK(nearest_rank(v, 0.975) == 10);
  CHECK(nearest_rank(v, 0.0) == 1);
  CHECK(nearest_rank(v, 1.0) == 10);
}

TEST_CASE("bootstrap") {
  SUBCASE("identical instances give a zero-width interval") {
    const std::vector<InstanceStats> same(20, {"x", 100, 30, 1.0});
    const auto ci = bootstrap_ci(same, 0.99, 1.0, 2000);
    CHECK(ci.low == ci.high);
    CHECK(ci.low == doctest::Approx(*time_to_solution(1.0, 0.3, 0.99)));
  }
  SUBCASE("seeded runs repeat exactly") {
    const auto s = synthetic(30, 0.1, 0.7, 1.4);
    const auto a = bootstrap_ci(s, 0.99, 1.4, 5000, 0.95, 17);
    const auto b = bootstrap_ci(s, 0.99, 1.4, 5000, 0.95, 17);
    CHECK(a.low == b.low);
    CHECK(a.high == b.high);
  }
  SUBCASE("interval contains the estimate and narrows like 1/sqrt(n)") {
    const auto small = synthetic(100, 0.1, 0.7, 1.4);
    const auto large = synthetic(400, 0.1, 0.7, 1.4);
    const auto a = bootstrap_ci(small, 0.99, 1.4, 10000, 0.95, 1);
    const auto b = bootstrap_ci(large, 0.99, 1.4, 10000, 0.95, 1);
    const double point = *aggregate_size(small, 0.99, 1.4).tts;
    CHECK(a.low <= point);
    CHECK(point <= a.high);
    const double ratio = (a.high - a.low) / (b.high - b.low);
    CHECK(ratio == doctest::Approx(2.0).epsilon(0.2));
  }
  SUBCASE("censoring") {
    std::vector<InstanceStats> s(10, {"x", 10, 0, 1.0});
    s[0].successes = 1;
    const auto ci = bootstrap_ci(s, 0.99, 1.0, 1000, 0.95, 3);
    CHECK(ci.censored_resamples > 10);
    CHECK(ci.censoring_flag);
    CHECK(std::isinf(ci.high));
  }
  const std::vector<InstanceStats> one{{"x", 1, 1, 1.0}};
  CHECK_THROWS(bootstrap_ci(one, 0.99, 1.0, 0));
  CHECK_THROWS(bootstrap_ci(one, 0.99, 1.0, 10, 1.0));
  CHECK_THROWS(bootstrap_ci({}, 0.99, 1.0));
}

TEST_CASE("flip throughput") {
  const auto fpga = flips_per_second(SamplerKind::Async, 800, 9.375);
  CHECK(fpga.attempted_flips == doctest::Approx(7.5e9));
  CHECK(fpga.per == "second");
  CHECK(flips_per_second(SamplerKind::Chromatic, 8, 1.0).attempted_flips == doctest::Approx(8e6));
  const auto serial = flips_per_second(SamplerKind::Serial, 800, 0.0);
  CHECK(serial.attempted_flips == 1.0);
  CHECK(serial.per == "step");
}
