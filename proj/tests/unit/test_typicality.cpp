// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "noisypaper/errors.hpp"
#include "noisypaper/rng.hpp"
#include "noisypaper/typicality.hpp"

using namespace noisypaper;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("typicality statistic", "[typicality]") {
  const std::vector<double> s{1.0, -2.0, 0.5, 3.0};
  std::vector<double> u(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) u[i] = 0.7 * s[i];
  CHECK(typicality_statistic(u, s, 0.7) == 0.0);

  // u - alpha s orthogonal to s.
  const std::vector<double> s2{1.0, 1.0};
  const std::vector<double> u2{0.3 + 1.0, 0.3 - 1.0};
  CHECK_THAT(typicality_statistic(u2, s2, 0.3), WithinAbs(0.0, 1e-15));

  const std::vector<double> ones(100, 1.0);
  std::vector<double> shifted(100, 1.25 + 1.0);
  CHECK_THAT(typicality_statistic(shifted, ones, 1.25), WithinAbs(100.0, 1e-12));

  const std::vector<double> shorter{1.0};
  try {
    typicality_statistic(shorter, s, 0.5);
    FAIL("length mismatch accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LengthMismatch);
  }
  CHECK_THROWS_AS(feasibility(shorter, s, 0.5, 1.0), Error);
}

TEST_CASE("feasibility", "[typicality]") {
  constexpr std::size_t n = 1000;
  const double delta = default_delta(1.0, 1.0, n);
  CHECK_THAT(delta, WithinAbs(3 * std::sqrt(1000.0), 1e-12));
  int independent_ok = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed, 7);
    std::vector<double> x(n), s(n);
    for (auto& v : s) v = rng.normal();
    for (auto& v : x) v = rng.normal();
    independent_ok += feasibility(x, s, 0.5, delta) ? 1 : 0;
    // X = S1 never passes once delta is below ||S1||^2.
    double norm2 = 0;
    for (double v : s) norm2 += v * v;
    CHECK(!feasibility(s, s, 0.5, 0.99 * norm2));
  }
  CHECK(independent_ok >= 99);

  const std::vector<double> zeros(10, 0.0);
  const std::vector<double> x(10, 3.0);
  CHECK(feasibility(x, zeros, 0.5, 0.0));
}

TEST_CASE("self-interference demo", "[typicality]") {
  SECTION("n = 100: statistic in [70, 130] at the chi-square rate") {
    // ||S1||^2 ~ chi2_100; P[70 <= chi2_100 <= 130] = 0.96664.
    constexpr int seeds = 400;
    int inside = 0;
    for (int seed = 0; seed < seeds; ++seed) {
      const SelfInterferenceReport r = self_interference_demo(100, 1.0, static_cast<std::uint64_t>(seed));
      inside += (r.statistic >= 70 && r.statistic <= 130) ? 1 : 0;
    }
    const double p = 0.9666420997137827;
    const double se = std::sqrt(p * (1 - p) / seeds);
    CHECK_THAT(static_cast<double>(inside) / seeds, WithinAbs(p, 3 * se));
  }
  SECTION("n = 10^4 concentrates at Q1") {
    const SelfInterferenceReport r = self_interference_demo(10'000, 1.0, 5);
    CHECK_THAT(r.ratio, WithinAbs(1.0, 0.05));
    CHECK(r.expected == 10'000.0);
    CHECK(r.alpha == 0.5);
    CHECK(!r.feasible);
    CHECK(r.statistic > 10 * r.independent_scale);
    CHECK(r.independent_statistic < r.delta);
  }
  SECTION("statistic scales with Q1") {
    const SelfInterferenceReport a = self_interference_demo(1000, 1.0, 9);
    const SelfInterferenceReport b = self_interference_demo(1000, 2.0, 9);
    CHECK_THAT(b.statistic, WithinRel(2 * a.statistic, 1e-12));
  }
  SECTION("linear versus square-root growth") {
    const SelfInterferenceReport small = self_interference_demo(100, 1.0, 3);
    const SelfInterferenceReport large = self_interference_demo(10'000, 1.0, 3);
    CHECK_THAT(large.statistic / small.statistic, WithinRel(100.0, 0.35));
    CHECK(large.statistic / large.independent_scale > 10);
  }
  CHECK_THROWS_AS(self_interference_demo(9, 1.0, 1), Error);
  CHECK_THROWS_AS(self_interference_demo(100, 0.0, 1), Error);
}
