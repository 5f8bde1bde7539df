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
#include <string>
#include <vector>

#include <Eigen/Core>

#include "noisypaper/linalg.hpp"
#include "noisypaper/model.hpp"
#include "noisypaper/rng.hpp"

namespace noisypaper {

/// n x k matrix of i.i.d. draws plus the generator metadata that produced it.
struct SampleSet {
  Eigen::MatrixXd data;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<std::string> labels;
  std::string generator;

  std::size_t n() const noexcept { return static_cast<std::size_t>(data.rows()); }
  std::size_t k() const noexcept { return static_cast<std::size_t>(data.cols()); }
};

/// Zero-mean Gaussian rows with covariance cov, via the symmetric square root
/// of cov applied to standard normal draws (handles singular PSD input).
/// Throws NotPSD, or RangeError for n < 2 or a label count mismatch.
SampleSet sample_gaussian(const CovMatrix& cov, std::size_t n, std::uint64_t seed,
                          std::vector<std::string> labels = {}, std::uint64_t stream = 0);

/// Unbiased sample covariance of up to four columns.
CovMatrix empirical_covariance(const Eigen::MatrixXd& columns);

/// Plug-in estimate of I(U;Y,S2) - I(U;S1) from n simulated channel uses
/// (n >= 10^4). Throws SingularCovariance on degenerate empirical blocks.
double mc_rate_estimate(const ChannelModel& model, double alpha, std::size_t n,
                        std::uint64_t seed, std::uint64_t stream = 0);

/// Plug-in estimate of I(S1,S2; Z).
double mc_mi_side_noise(const ChannelModel& model, std::size_t n, std::uint64_t seed,
                        std::uint64_t stream = 0);

/// Golden-section argmax of rate_alpha. The bracket starts at [-5, 5] and is
/// widened toward whichever edge the maximiser sticks to; NoInteriorMax when
/// that never settles or the rate is unbounded.
double numeric_alpha_star(const ChannelModel& model, double tol = 1e-10);

struct RandomChannelOptions {
  bool markov = true;
  double rho_bound = 0.95;
  /// Rejection threshold on the smallest eigenvalue of the correlation matrix.
  double min_eigenvalue = 1e-3;
  double power_lo = 0.1;
  double power_hi = 10.0;
  double s2_absent_probability = 0.0;
};

/// Rejection-sampled valid model; powers log-uniform, correlations uniform.
ChannelModel random_channel(Rng& rng, const RandomChannelOptions& options = {});

/// One closed-form vs Monte Carlo comparison.
struct VerificationRecord {
  std::string formula;
  double closed_form = 0.0;
  double mc_estimate = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double abs_error = 0.0;
  bool pass = false;
};

}  // namespace noisypaper
