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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace noisypaper {

/// |(u - alpha s)^T s|. Throws LengthMismatch on unequal or empty inputs.
double typicality_statistic(std::span<const double> u_seq, std::span<const double> s_seq, double alpha);

/// True iff the candidate U = X + alpha S passes the statistic test at delta.
bool feasibility(std::span<const double> x_seq, std::span<const double> s_seq, double alpha, double delta);

/// 3 sigma_x sigma_s sqrt(n).
double default_delta(double sigma_x, double sigma_s, std::size_t n) noexcept;

struct SelfInterferenceReport {
  std::size_t n = 0;
  double q1 = 0;
  double alpha = 0;
  double statistic = 0;              // X = S1
  double expected = 0;               // n q1
  double ratio = 0;                  // statistic / n
  double independent_statistic = 0;  // X drawn independently with the same power
  double independent_scale = 0;      // q1 sqrt(n), the CLT scale of the independent case
  double delta = 0;
  bool feasible = false;             // whether X = S1 passes at delta
  std::uint64_t seed = 0;
};

/// S1 ~ N(0, q1) i.i.d., X = S1, alpha from the dirty-paper formula with
/// P = q1 and unit noise. Requires n >= 10 and q1 > 0 (RangeError).
SelfInterferenceReport self_interference_demo(std::size_t n, double q1, std::uint64_t seed);

}  // namespace noisypaper
