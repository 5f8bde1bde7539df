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

#include "noisypaper/json.hpp"

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "noisypaper/errors.hpp"

namespace noisypaper {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 11> kModelKeys = {
    "p", "q1", "q2", "n", "rho_xs1", "rho_xs2", "rho_xz", "rho_s1s2", "rho_s1z", "rho_s2z", "markov_noise"};

double number(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_number()) throw Error(ErrorKind::RangeError, "model key '" + key + "' must be a number");
  return v.get<double>();
}

}  // namespace

json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

ChannelParams merge_params_json(ChannelParams p, const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::RangeError, "model config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto k : kModelKeys) known = known || key == k;
    if (!known) throw Error(ErrorKind::RangeError, "unknown model key '" + key + "'");
  }
  auto set = [&](const char* key, double& field) {
    if (j.contains(key)) field = number(j, key);
  };
  auto set_opt = [&](const char* key, std::optional<double>& field) {
    if (j.contains(key) && !j.at(key).is_null()) field = number(j, key);
  };
  set("p", p.p);
  set("q1", p.q1);
  set("q2", p.q2);
  set("n", p.n);
  set("rho_xs1", p.rho_xs1);
  set_opt("rho_xs2", p.rho_xs2);
  set_opt("rho_xz", p.rho_xz);
  set("rho_s1s2", p.rho_s1s2);
  set("rho_s1z", p.rho_s1z);
  set("rho_s2z", p.rho_s2z);
  if (j.contains("markov_noise")) {
    if (!j.at("markov_noise").is_boolean())
      throw Error(ErrorKind::RangeError, "model key 'markov_noise' must be a boolean");
    p.markov_noise = j.at("markov_noise").get<bool>();
  }
  return p;
}

ChannelParams params_from_json(const json& j) { return merge_params_json(ChannelParams{}, j); }

ChannelModel channel_from_json(const json& j) { return new_channel(params_from_json(j)); }

json to_json(const ChannelModel& m) {
  return json{{"p", m.p()},           {"q1", m.q1()},           {"q2", m.q2()},
              {"n", m.n()},           {"rho_xs1", m.rho_xs1()}, {"rho_xs2", m.rho_xs2()},
              {"rho_xz", m.rho_xz()}, {"rho_s1s2", m.rho_s1s2()}, {"rho_s1z", m.rho_s1z()},
              {"rho_s2z", m.rho_s2z()}, {"markov_noise", m.markov_noise()}};
}

json to_json(const MinorSet& m) {
  return json{{"D", m.d},          {"d_P", m.d_p},       {"d_Q1", m.d_q1},       {"d_A1", m.d_a1},
              {"d_L0", m.d_l0},    {"d_L1", m.d_l1},     {"d_N", m.d_n},         {"d_Q1N", m.d_q1n},
              {"d_Q2N", m.d_q2n},  {"d_PN", m.d_pn},     {"d_PQ1", m.d_pq1},     {"d_L0L1", m.d_l0l1},
              {"d_PL1", m.d_pl1},  {"d_Q1L0", m.d_q1l0}, {"d_P_norm", m.d_p_norm}};
}

json to_json(const RateReport& r) {
  return json{{"nats", json_number(r.nats)},
              {"bits", json_number(r.bits())},
              {"path", std::string(to_string(r.path))},
              {"alpha", r.alpha ? json_number(*r.alpha) : json(nullptr)}};
}

json to_json(const VerificationRecord& r) {
  return json{{"formula", r.formula},
              {"closed_form", json_number(r.closed_form)},
              {"mc_estimate", json_number(r.mc_estimate)},
              {"n", r.n},
              {"seed", r.seed},
              {"abs_error", json_number(r.abs_error)},
              {"pass", r.pass}};
}

json to_json(const FgmCorrelationReport& r) {
  return json{{"marginal_x", r.marginal_x},
              {"marginal_s", r.marginal_s},
              {"target_rho", r.target_rho},
              {"rho_param", r.rho_param},
              {"empirical_rho", r.empirical_rho},
              {"a_x", r.a_x},
              {"a_s", r.a_s},
              {"empirical_cov", r.empirical_cov},
              {"predicted_cov", r.predicted_cov},
              {"marginal_ks_x", r.marginal_ks_x},
              {"marginal_ks_s", r.marginal_ks_s},
              {"n", r.n},
              {"seed", r.seed},
              {"pass", r.pass}};
}

json to_json(const SelfInterferenceReport& r) {
  return json{{"n", r.n},
              {"q1", r.q1},
              {"alpha", r.alpha},
              {"statistic", r.statistic},
              {"expected", r.expected},
              {"ratio", r.ratio},
              {"independent_statistic", r.independent_statistic},
              {"independent_scale", r.independent_scale},
              {"delta", r.delta},
              {"feasible", r.feasible},
              {"seed", r.seed}};
}

}  // namespace noisypaper
