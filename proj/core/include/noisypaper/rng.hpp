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

#include <cstdint>
#include <random>
#include <string_view>

namespace noisypaper {

/// SplitMix64 finaliser; used to derive independent engine seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seedable 64-bit generator with numbered streams.
///
/// Stream k of seed s is an mt19937_64 whose state is filled from SplitMix64
/// outputs keyed by (s, k), so parallel tasks take distinct stream indices
/// and stay reproducible regardless of scheduling.
class Rng {
 public:
  static constexpr std::string_view kGenerator = "mt19937_64/splitmix64-seeded";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  double normal() { return normal_(engine_); }
  /// Uniform on the open interval (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace noisypaper
