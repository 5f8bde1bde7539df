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

#include "noisypaper/rates.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "noisypaper/errors.hpp"
#include "noisypaper/infotheory.hpp"
#include "noisypaper/minors.hpp"

namespace noisypaper {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runtime agreement demanded of the two independent routes; skipped when the
// relevant normalised denominator is below kCrossCheckConditioning, where the
// minor route loses digits to cancellation.
[[maybe_unused]] constexpr double kCrossCheckTolerance = 1e-8;
[[maybe_unused]] constexpr double kCrossCheckConditioning = 1e-6;

void require_markov(const ChannelModel& model, const char* what) {
  if (!model.markov_noise())
    throw Error(ErrorKind::MarkovRequired,
                std::string(what) + " needs a model asserting X -> (S1,S2) -> Z");
}

[[maybe_unused]] void cross_check(double a, double b, const char* what) {
  if (!std::isfinite(a) || !std::isfinite(b)) return;
  if (std::abs(a - b) > kCrossCheckTolerance * std::max(1.0, std::abs(b)))
    throw Error(ErrorKind::CrossCheckFailed, std::string(what) + ": " + std::to_string(a) +
                                                 " vs " + std::to_string(b));
}

}  // namespace

std::string_view to_string(FormulaPath path) noexcept {
  switch (path) {
    case FormulaPath::RAlpha: return "R_ALPHA";
    case FormulaPath::AlphaStarClosed: return "ALPHA_STAR_CLOSED";
    case FormulaPath::LowerGeneral: return "LOWER_GENERAL";
    case FormulaPath::CapacityMarkov: return "CAPACITY_MARKOV";
    case FormulaPath::UpperMinorPath: return "UPPER_MINOR_PATH";
    case FormulaPath::SpecialCase: return "SPECIAL_CASE";
    case FormulaPath::Costa: return "COSTA";
  }
  return "UNKNOWN";
}

RateReport rate_alpha(const ChannelModel& model, double alpha) {
  const CovMatrix k = working_covariance(model);
  const MinorSet m = compute_minors(k);
  const DerivedCovariances dc = derived_covariances(model, alpha);

  const double q1 = model.q1();
  const double numerator = m.d_q2n * det_y_s2_from_minors(m);
  const double denominator = q1 * det_u_y_s2_from_minors(m, alpha);
  const double numerator_scale = hadamard_scale(dc.u_s1.matrix()) * hadamard_scale(dc.y_s2.matrix());
  const double denominator_scale = q1 * hadamard_scale(dc.u_y_s2.matrix());

  const bool numerator_zero = numerator <= kDegenerateTolerance * numerator_scale;
  const bool denominator_zero = denominator <= kDegenerateTolerance * denominator_scale;

  RateReport r{0.0, FormulaPath::RAlpha, alpha};
  if (numerator_zero && denominator_zero)
    throw Error(ErrorKind::DegenerateDenominator,
                "R(alpha) is 0/0 at alpha = " + std::to_string(alpha));
  if (denominator_zero) {
    r.nats = kInf;
  } else if (numerator_zero) {
    r.nats = -kInf;
  } else {
    r.nats = 0.5 * std::log(numerator / denominator);
  }
  return r;
}

double alpha_star(const ChannelModel& model) {
  const MinorSet m = compute_minors(working_covariance(model));
  const double denominator = det_input_noise_side_from_minors(m);
  const double scale = hadamard_scale(input_noise_side_covariance(model).matrix());
  if (denominator <= kDegenerateTolerance * scale)
    throw Error(ErrorKind::DegenerateDenominator, "cov(X+Z, S1, S2) is singular; alpha* undefined");
  return ((m.d_n + m.d_l0) - (m.d_a1 + m.d_l1)) / denominator;
}

RateReport lower_bound_general(const ChannelModel& model) {
  const double sigma_x = std::sqrt(model.p());
  const double sigma_z = std::sqrt(model.n());
  const double rx1 = model.rho_xs1();
  const double r12 = model.rho_s1s2();
  const double gap = rx1 * model.rho_s1z() - model.rho_xz();
  const double input_share = 1.0 - rx1 * rx1;
  const double side_share = 1.0 - r12 * r12;
  const double d_norm =
      normalized_side_noise_determinant(r12, model.rho_s1z(), model.rho_s2z());

  const double lead = sigma_x * input_share - sigma_z * gap;
  const double numerator = lead * lead * side_share;
  const double bracket = input_share * d_norm - gap * gap * side_share;

  RateReport r{0.0, FormulaPath::LowerGeneral, std::nullopt};
  try {
    r.alpha = alpha_star(model);
  } catch (const Error&) {
  }

  const double numerator_scale = (sigma_x + sigma_z) * (sigma_x + sigma_z);
  if (numerator <= kDegenerateTolerance * numerator_scale) return r;
  if (bracket <= kDegenerateTolerance) {
    r.nats = kInf;
    return r;
  }
  r.nats = 0.5 * std::log1p(numerator / (sigma_z * sigma_z * bracket));

#if defined(NOISYPAPER_CROSS_CHECKS)
  if (r.alpha && bracket > kCrossCheckConditioning) {
    try {
      cross_check(r.nats, rate_alpha(model, *r.alpha).nats, "R_G vs R(alpha*)");
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::CrossCheckFailed) throw;
    }
  }
#endif
  return r;
}

RateReport capacity_markov(const ChannelModel& model) {
  require_markov(model, "capacity_markov");
  const double rx1 = model.rho_xs1();
  const double r12 = model.rho_s1s2();
  const double input_share = 1.0 - rx1 * rx1;
  const double d_norm =
      normalized_side_noise_determinant(r12, model.rho_s1z(), model.rho_s2z());

  RateReport r{0.0, FormulaPath::CapacityMarkov, std::nullopt};
  try {
    r.alpha = alpha_star(model);
  } catch (const Error&) {
  }
  // A fully input-correlated interference wins over a vanishing d_P^N.
  if (input_share <= kDegenerateTolerance) return r;
  if (d_norm <= kDegenerateTolerance) {
    r.nats = kInf;
    return r;
  }
  r.nats = 0.5 * std::log1p(model.p() / model.n() * input_share * (1.0 - r12 * r12) / d_norm);

#if defined(NOISYPAPER_CROSS_CHECKS)
  if (d_norm > kCrossCheckConditioning)
    cross_check(r.nats, capacity_markov_mi_form(model), "capacity ratio form vs MI form");
#endif
  return r;
}

double capacity_markov_mi_form(const ChannelModel& model) {
  require_markov(model, "capacity_markov_mi_form");
  const double rx1 = model.rho_xs1();
  const double input_share = 1.0 - rx1 * rx1;
  if (input_share <= kDegenerateTolerance) return 0.0;
  const double mi = mi_side_noise(model);
  if (std::isinf(mi)) return kInf;
  return 0.5 * std::log1p(model.p() / model.n() * input_share * std::exp(2.0 * mi));
}

RateReport upper_bound_minor_path(const ChannelModel& model) {
  require_markov(model, "upper_bound_minor_path");
  const CovMatrix k = working_covariance(model);
  const MinorSet m = compute_minors(k);
  const double p = k(var::x, var::x), q1 = k(var::s1, var::s1);
  const double q2 = k(var::s2, var::s2), n = k(var::z, var::z);

  RateReport r{0.0, FormulaPath::UpperMinorPath, std::nullopt};
  // d_Q2N = P Q1 (1 - rho_xs1^2): the same numerator-zero rule as capacity_markov.
  if (m.d_q2n <= kDegenerateTolerance * p * q1) return r;
  if (m.d_p <= kDegenerateTolerance * q1 * q2 * n) {
    r.nats = kInf;
    return r;
  }
  const double numerator = std::max(0.0, m.d_n + 2.0 * m.d_l0);
  r.nats = 0.5 * std::log1p(numerator / m.d_p);
  return r;
}

std::string_view to_string(SpecialCase mode) noexcept {
  switch (mode) {
    case SpecialCase::NoiseIndependent: return "NOISE_INDEPENDENT";
    case SpecialCase::TxOnly: return "TX_ONLY";
    case SpecialCase::RxOnly: return "RX_ONLY";
    case SpecialCase::UncorrelatedSides: return "UNCORR_SIDES";
    case SpecialCase::Costa: return "COSTA";
  }
  return "UNKNOWN";
}

std::optional<SpecialCase> special_case_from_string(std::string_view name) noexcept {
  for (auto mode : {SpecialCase::NoiseIndependent, SpecialCase::TxOnly, SpecialCase::RxOnly,
                    SpecialCase::UncorrelatedSides, SpecialCase::Costa})
    if (to_string(mode) == name) return mode;
  return std::nullopt;
}

namespace {

std::size_t expected_rho_count(SpecialCase mode) {
  switch (mode) {
    case SpecialCase::UncorrelatedSides: return 2;
    case SpecialCase::Costa: return 0;
    default: return 1;
  }
}

void validate_special_case(SpecialCase mode, double p, double n, std::span<const double> rho) {
  if (!std::isfinite(p) || p <= 0.0 || !std::isfinite(n) || n <= 0.0)
    throw Error(ErrorKind::RangeError, "p and n must be positive finite numbers");
  if (rho.size() != expected_rho_count(mode))
    throw Error(ErrorKind::RangeError, std::string(to_string(mode)) + " takes " +
                                           std::to_string(expected_rho_count(mode)) +
                                           " correlation(s), got " + std::to_string(rho.size()));
  for (double r : rho)
    if (!std::isfinite(r) || r < -1.0 || r > 1.0)
      throw Error(ErrorKind::RangeError, "correlations must lie in [-1, 1]");
}

double knowledge_gain_capacity(double snr, double residual) {
  if (residual <= kDegenerateTolerance) return kInf;
  return 0.5 * std::log1p(snr / residual);
}

}  // namespace

RateReport special_case_capacity(SpecialCase mode, double p, double n, std::span<const double> rho) {
  validate_special_case(mode, p, n, rho);
  const double snr = p / n;
  RateReport r{0.0, FormulaPath::SpecialCase, std::nullopt};
  switch (mode) {
    case SpecialCase::NoiseIndependent:
      r.nats = 0.5 * std::log1p(snr * (1.0 - rho[0] * rho[0]));
      break;
    case SpecialCase::TxOnly:
    case SpecialCase::RxOnly:
      r.nats = knowledge_gain_capacity(snr, 1.0 - rho[0] * rho[0]);
      break;
    case SpecialCase::UncorrelatedSides:
      r.nats = knowledge_gain_capacity(snr, 1.0 - rho[0] * rho[0] - rho[1] * rho[1]);
      break;
    case SpecialCase::Costa:
      r.path = FormulaPath::Costa;
      r.nats = 0.5 * std::log1p(snr);
      r.alpha = p / (p + n);
      break;
  }
  return r;
}

ChannelModel special_case_model(SpecialCase mode, double p, double n, std::span<const double> rho) {
  validate_special_case(mode, p, n, rho);
  ChannelParams params;
  params.p = p;
  params.n = n;
  params.q1 = 1.0;
  params.q2 = 0.0;
  params.markov_noise = true;
  switch (mode) {
    case SpecialCase::NoiseIndependent:
      params.rho_xs1 = rho[0];
      break;
    case SpecialCase::TxOnly:
      params.rho_s1z = rho[0];
      break;
    case SpecialCase::RxOnly:
      params.q2 = 1.0;
      params.rho_s2z = rho[0];
      break;
    case SpecialCase::UncorrelatedSides:
      params.q2 = 1.0;
      params.rho_s1z = rho[0];
      params.rho_s2z = rho[1];
      break;
    case SpecialCase::Costa:
      break;
  }
  return new_channel(params);
}

}  // namespace noisypaper
