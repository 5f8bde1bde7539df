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

#include <optional>

#include <Eigen/Core>

#include "noisypaper/linalg.hpp"

namespace noisypaper {

/// Row/column order of the channel covariance: (X, S1, S2, Z).
namespace var {
inline constexpr int x = 0;
inline constexpr int s1 = 1;
inline constexpr int s2 = 2;
inline constexpr int z = 3;
}  // namespace var

/// Smallest eigenvalue allowed for the 4x4 correlation matrix.
inline constexpr double kPsdTolerance = 1e-10;
/// Allowed mismatch for a supplied rho_xs2 / rho_xz against its Markov value.
inline constexpr double kRedundancyTolerance = 1e-9;

/// Unvalidated parameter record, as read from flags or JSON.
///
/// rho_xs2 is redundant under the S2 -> S1 -> X chain and is derived when
/// omitted. rho_xz is derived when omitted and markov_noise is set, and
/// defaults to 0 otherwise. q2 = 0 means "no receiver side information".
struct ChannelParams {
  double p = 1.0;
  double q1 = 1.0;
  double q2 = 1.0;
  double n = 1.0;
  double rho_xs1 = 0.0;
  std::optional<double> rho_xs2;
  std::optional<double> rho_xz;
  double rho_s1s2 = 0.0;
  double rho_s1z = 0.0;
  double rho_s2z = 0.0;
  bool markov_noise = false;
};

/// Validated, immutable channel definition evaluated at full input power.
class ChannelModel {
 public:
  double p() const noexcept { return p_; }
  double q1() const noexcept { return q1_; }
  double q2() const noexcept { return q2_; }
  double n() const noexcept { return n_; }
  double rho_xs1() const noexcept { return rho_xs1_; }
  double rho_xs2() const noexcept { return rho_xs2_; }
  double rho_xz() const noexcept { return rho_xz_; }
  double rho_s1s2() const noexcept { return rho_s1s2_; }
  double rho_s1z() const noexcept { return rho_s1z_; }
  double rho_s2z() const noexcept { return rho_s2z_; }
  bool markov_noise() const noexcept { return markov_noise_; }

  bool s2_present() const noexcept { return q2_ > 0.0; }

  /// Correlation matrix of (X, S1, S2, Z). An absent S2 gets a unit diagonal
  /// and zero correlations.
  Eigen::Matrix4d correlation_matrix() const;

  /// Full parameter record (derived values filled in), for edits and re-validation.
  ChannelParams params() const;

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;

 private:
  friend ChannelModel new_channel(const ChannelParams& params);

  ChannelModel() = default;

  double p_ = 0, q1_ = 0, q2_ = 0, n_ = 0;
  double rho_xs1_ = 0, rho_xs2_ = 0, rho_xz_ = 0;
  double rho_s1s2_ = 0, rho_s1z_ = 0, rho_s2z_ = 0;
  bool markov_noise_ = false;
};

/// Validates a parameter record.
///
/// Throws RangeError for out-of-domain values (including S2 correlations on
/// an absent S2), MarkovViolation when a supplied rho_xs2 / rho_xz disagrees
/// with its Markov-chain value by more than kRedundancyTolerance, and NotPSD
/// when the correlation matrix has an eigenvalue below -kPsdTolerance.
ChannelModel new_channel(const ChannelParams& params);

/// Asserts X -> (S1,S2) -> Z: sets the flag and overwrites rho_xz with
/// rho_xs1 * rho_s1z. Idempotent; may throw NotPSD.
ChannelModel markov_complete(const ChannelModel& model);

/// K-hat with rows/columns (X, S1, S2, Z), sigma_X^2 = P. An absent S2 keeps
/// a zero row and column.
CovMatrix assemble_covariance(const ChannelModel& model);

/// K-hat as used by the rate formulas: identical to assemble_covariance
/// except that an absent S2 is replaced by a unit-power variable independent
/// of (X, S1, Z). Receiver knowledge of an independent variable changes no
/// rate, so this is exact rather than a small-Q2 limit.
CovMatrix working_covariance(const ChannelModel& model);

}  // namespace noisypaper
