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

#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>

#include "noisypaper/model.hpp"

namespace noisypaper {

/// Which closed form produced a RateReport.
enum class FormulaPath {
  RAlpha,           // R(alpha) from the minor set
  AlphaStarClosed,  // R at the closed-form optimal alpha
  LowerGeneral,     // general achievable rate R_G
  CapacityMarkov,   // capacity under X -> (S1,S2) -> Z
  UpperMinorPath,   // 1/2 log(1 + (d_N + 2 d_L0) / d_P)
  SpecialCase,      // corollary closed forms
  Costa,            // 1/2 log(1 + P/N)
};

std::string_view to_string(FormulaPath path) noexcept;

/// A rate in nats. +infinity is a legitimate, flagged value (perfect
/// knowledge of the noise).
struct RateReport {
  double nats = 0.0;
  FormulaPath path = FormulaPath::RAlpha;
  std::optional<double> alpha;

  bool infinite() const noexcept { return std::isinf(nats) && nats > 0; }
  double bits() const noexcept { return nats / std::numbers::ln2; }
};

/// Relative threshold under which a denominator counts as zero.
inline constexpr double kDegenerateTolerance = 1e-12;

/// R(alpha) = I(U; Y, S2) - I(U; S1) for U = alpha S1 + X, from the minors of
/// K-hat. Returns +inf when only the denominator vanishes, -inf when only the
/// numerator does (|rho_xs1| = 1), and throws DegenerateDenominator when both do.
RateReport rate_alpha(const ChannelModel& model, double alpha);

/// Closed-form maximiser of rate_alpha. Throws DegenerateDenominator when
/// cov(X+Z, S1, S2) is singular.
double alpha_star(const ChannelModel& model);

/// General achievable rate R_G; no Markov assumption on the noise.
RateReport lower_bound_general(const ChannelModel& model);

/// Capacity for a Markov-noise model, in its correlation form. Throws
/// MarkovRequired when the model does not assert X -> (S1,S2) -> Z.
RateReport capacity_markov(const ChannelModel& model);

/// The same capacity written through I(S1,S2;Z):
/// 1/2 log(1 + (P/N)(1 - rho_xs1^2) exp(2 I)).
double capacity_markov_mi_form(const ChannelModel& model);

/// Upper bound max I(X; Y | S1, S2) evaluated purely from minors.
RateReport upper_bound_minor_path(const ChannelModel& model);

enum class SpecialCase {
  NoiseIndependent,   // rho = {rho_xs1}; noise independent of (X, S1, S2)
  TxOnly,             // rho = {rho_s1z}; S2 absent, rho_xs1 = 0
  RxOnly,             // rho = {rho_s2z}; S1 absent
  UncorrelatedSides,  // rho = {rho_s1z, rho_s2z}; rho_s1s2 = 0, rho_xs1 = 0
  Costa,              // rho = {}
};

std::string_view to_string(SpecialCase mode) noexcept;
std::optional<SpecialCase> special_case_from_string(std::string_view name) noexcept;

RateReport special_case_capacity(SpecialCase mode, double p, double n, std::span<const double> rho);

/// The full Markov model that special_case_capacity collapses. An absent S1
/// (RxOnly) is represented by an independent unit-power S1.
ChannelModel special_case_model(SpecialCase mode, double p, double n, std::span<const double> rho);

}  // namespace noisypaper
