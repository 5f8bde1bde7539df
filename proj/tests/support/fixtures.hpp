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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "noisypaper/mc_oracle.hpp"
#include "noisypaper/model.hpp"
#include "noisypaper/rng.hpp"

namespace noisypaper::test {

inline double rel_err(double a, double b) {
  if (a == b) return 0.0;
  return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

inline std::vector<ChannelModel> random_models(int count, std::uint64_t seed, bool markov,
                                               double s2_absent_probability = 0.0,
                                               double min_eigenvalue = 1e-3) {
  Rng rng(seed, 0);
  RandomChannelOptions opts;
  opts.markov = markov;
  opts.s2_absent_probability = s2_absent_probability;
  opts.min_eigenvalue = min_eigenvalue;
  std::vector<ChannelModel> out;
  for (int i = 0; i < count; ++i) out.push_back(random_channel(rng, opts));
  return out;
}

/// Unit powers except where given.
inline ChannelModel make(ChannelParams p) { return new_channel(p); }

/// Model with S2 absent (q2 = 0) and powers P, Q1, N.
inline ChannelModel costa(double p, double n, double q1 = 1.0) {
  ChannelParams c;
  c.p = p;
  c.n = n;
  c.q1 = q1;
  c.q2 = 0.0;
  return new_channel(c);
}

}  // namespace noisypaper::test
