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
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "noisypaper/minors.hpp"
#include "noisypaper/model.hpp"
#include "noisypaper/rates.hpp"

namespace noisypaper::cli {

/// Everything the capacity command and each sweep row report for one model.
struct PointResult {
  ChannelModel model;
  /// Empty when the noise is not Markov given the side information.
  std::optional<RateReport> capacity;
  std::optional<RateReport> lower;
  std::optional<double> alpha_star;
  std::optional<double> mi_side_noise;
  MinorSet minors;
};

/// A model without the Markov flag is promoted when its rho_xz already equals
/// the Markov value, so that capacity is reported for it.
PointResult evaluate_point(const ChannelModel& model);

/// "%.12g" in the classic locale; infinities as "inf" / "-inf".
std::string format_number(double v);

inline const std::vector<std::string> kSweepParams = {"rho_xs1", "rho_s1z", "rho_s2z",
                                                      "rho_s1s2", "snr_db", "mi_s1z"};

/// Sets the swept parameter on a copy of base. snr_db sets p = n 10^(v/10);
/// mi_s1z sets rho_s1z = sqrt(1 - exp(-2 v)).
ChannelParams apply_sweep_value(ChannelParams base, const std::string& param, double value);

/// Grid values from..to inclusive; steps = 1 yields {from}.
std::vector<double> sweep_grid(double from, double to, int steps);

/// Writes the sweep CSV (header plus one row per grid value, in grid order).
/// Points run on up to `threads` worker threads (0 = hardware concurrency).
void write_sweep_csv(std::ostream& out, const ChannelParams& base, const std::string& param,
                     const std::vector<double>& values, unsigned threads = 0);

/// Seed from NOISYPAPER_SEED when set and numeric, otherwise fallback.
std::uint64_t default_seed(std::uint64_t fallback = 42);

/// Full command line (without the program name). Returns the process exit code:
/// 0 ok, 1 verification failure, 2 usage or validation error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace noisypaper::cli
