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

#include <span>

#include "noisypaper/linalg.hpp"
#include "noisypaper/model.hpp"

namespace noisypaper {

/// Differential entropy (nats) of a zero-mean Gaussian vector,
/// 1/2 log((2 pi e)^k det cov). Throws SingularCovariance when det is not
/// positive relative to the product of the variances.
double gaussian_entropy(const CovMatrix& cov);

/// I(A;B) = H(A) + H(B) - H(A,B) for disjoint index sets of a joint covariance.
double mutual_information(const CovMatrix& joint, std::span<const int> a, std::span<const int> b);

/// I(S1,S2; Z) = 1/2 log((1 - rho_s1s2^2) / d_P^N). +infinity when d_P^N
/// vanishes (the noise is a deterministic function of the side information).
double mi_side_noise(const ChannelModel& model);

}  // namespace noisypaper
