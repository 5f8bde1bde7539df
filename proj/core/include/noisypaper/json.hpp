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

#include <nlohmann/json.hpp>

#include "noisypaper/copula.hpp"
#include "noisypaper/mc_oracle.hpp"
#include "noisypaper/minors.hpp"
#include "noisypaper/model.hpp"
#include "noisypaper/rates.hpp"
#include "noisypaper/typicality.hpp"

namespace noisypaper {

/// Number or the strings "inf" / "-inf" / "nan".
nlohmann::json json_number(double v);

/// Flat object with keys p, q1, q2, n, rho_xs1, rho_xs2, rho_xz, rho_s1s2,
/// rho_s1z, rho_s2z, markov_noise. Every key is optional (defaults as in
/// ChannelParams); unknown keys and non-numeric values raise RangeError.
ChannelParams params_from_json(const nlohmann::json& j);
/// Overlays the keys present in j onto base.
ChannelParams merge_params_json(ChannelParams base, const nlohmann::json& j);
ChannelModel channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ChannelModel& model);
/// Keys follow the minor names: D, d_P, d_Q1, ..., d_P_norm.
nlohmann::json to_json(const MinorSet& minors);
/// {nats, bits, path, alpha}; infinity is written as "inf".
nlohmann::json to_json(const RateReport& report);
nlohmann::json to_json(const VerificationRecord& record);
nlohmann::json to_json(const FgmCorrelationReport& report);
nlohmann::json to_json(const SelfInterferenceReport& report);

}  // namespace noisypaper
