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

#include "noisypaper/typicality.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "noisypaper/errors.hpp"
#include "noisypaper/rng.hpp"

namespace noisypaper {
namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b || a == 0)
    throw Error(ErrorKind::LengthMismatch,
                "sequences of length " + std::to_string(a) + " and " + std::to_string(b));
}

}  // namespace

double typicality_statistic(std::span<const double> u_seq, std::span<const double> s_seq, double alpha) {
  check_lengths(u_seq.size(), s_seq.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < u_seq.size(); ++i) acc += (u_seq[i] - alpha * s_seq[i]) * s_seq[i];
  return std::abs(acc);
}

bool feasibility(std::span<const double> x_seq, std::span<const double> s_seq, double alpha, double delta) {
  check_lengths(x_seq.size(), s_seq.size());
  std::vector<double> u(x_seq.size());
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = x_seq[i] + alpha * s_seq[i];
  return typicality_statistic(u, s_seq, alpha) <= delta;
}

double default_delta(double sigma_x, double sigma_s, std::size_t n) noexcept {
  return 3.0 * sigma_x * sigma_s * std::sqrt(static_cast<double>(n));
}

SelfInterferenceReport self_interference_demo(std::size_t n, double q1, std::uint64_t seed) {
  if (n < 10) throw Error(ErrorKind::RangeError, "self-interference demo needs n >= 10");
  if (!(q1 > 0.0) || !std::isfinite(q1)) throw Error(ErrorKind::RangeError, "q1 must be positive");

  const double sigma = std::sqrt(q1);
  Rng side(seed, 0);
  Rng indep(seed, 1);
  std::vector<double> s(n), x_indep(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = sigma * side.normal();
  for (std::size_t i = 0; i < n; ++i) x_indep[i] = sigma * indep.normal();

  SelfInterferenceReport r;
  r.n = n;
  r.q1 = q1;
  r.seed = seed;
  r.alpha = q1 / (q1 + 1.0);
  std::vector<double> u(n), u_indep(n);
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = s[i] + r.alpha * s[i];
    u_indep[i] = x_indep[i] + r.alpha * s[i];
  }
  r.statistic = typicality_statistic(u, s, r.alpha);
  r.independent_statistic = typicality_statistic(u_indep, s, r.alpha);
  r.expected = static_cast<double>(n) * q1;
  r.ratio = r.statistic / static_cast<double>(n);
  r.independent_scale = q1 * std::sqrt(static_cast<double>(n));
  r.delta = default_delta(sigma, sigma, n);
  r.feasible = r.statistic <= r.delta;
  return r;
}

}  // namespace noisypaper
