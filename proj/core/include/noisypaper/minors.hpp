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

#include "noisypaper/linalg.hpp"
#include "noisypaper/model.hpp"

namespace noisypaper {

/// Determinant and named minors of K-hat.
///
/// Several of these are not principal minors: d_a1, d_l0, d_l1, d_l0l1,
/// d_pl1 and d_q1l0 select different row and column sets (see kMinorIndex in
/// minors.cpp). d_p_norm is the determinant of the (S1, S2, Z) correlation
/// matrix, so d_p = q1 * q2 * n * d_p_norm whenever all three are positive.
struct MinorSet {
  double d = 0;
  double d_p = 0;
  double d_q1 = 0;
  double d_a1 = 0;
  double d_l0 = 0;
  double d_l1 = 0;
  double d_n = 0;
  double d_q1n = 0;
  double d_q2n = 0;
  double d_pn = 0;
  double d_pq1 = 0;
  double d_l0l1 = 0;
  double d_pl1 = 0;
  double d_q1l0 = 0;
  double d_p_norm = 0;
};

MinorSet compute_minors(const CovMatrix& k_hat);

/// 1 + 2 r12 r1z r2z - r12^2 - r1z^2 - r2z^2.
double normalized_side_noise_determinant(double rho_s1s2, double rho_s1z, double rho_s2z) noexcept;

/// Covariances of the auxiliary-variable construction U = alpha*S1 + X,
/// Y = X + S1 + S2 + Z, written entry by entry from K-hat.
struct DerivedCovariances {
  CovMatrix y_s2;    // (Y, S2)
  CovMatrix u_y_s2;  // (U, Y, S2)
  CovMatrix u_s1;    // (U, S1)
};

/// Uses working_covariance, so an absent S2 appears as an independent unit-power variable.
DerivedCovariances derived_covariances(const ChannelModel& model, double alpha);

/// cov(X+Z, S1, S2), the matrix behind the conditional-MI upper bound.
CovMatrix input_noise_side_covariance(const ChannelModel& model);

// Minor-combination forms of the determinants above.
double det_y_s2_from_minors(const MinorSet& m) noexcept;
double det_u_y_s2_from_minors(const MinorSet& m, double alpha) noexcept;
double det_u_s1_from_minors(const MinorSet& m) noexcept;
double det_input_noise_side_from_minors(const MinorSet& m) noexcept;

}  // namespace noisypaper
