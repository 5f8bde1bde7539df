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

#include "noisypaper/infotheory.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "noisypaper/errors.hpp"
#include "noisypaper/minors.hpp"

namespace noisypaper {
namespace {

constexpr double kSingularTolerance = 1e-14;
constexpr double kDegenerateTolerance = 1e-12;

}  // namespace

double gaussian_entropy(const CovMatrix& cov) {
  const double det = cov.determinant();
  const double scale = hadamard_scale(cov.matrix());
  if (!(det > 0.0) || !(scale > 0.0) || det <= kSingularTolerance * scale)
    throw Error(ErrorKind::SingularCovariance,
                "covariance of dimension " + std::to_string(cov.dim()) +
                    " has determinant " + std::to_string(det));
  const double k = cov.dim();
  return 0.5 * (k * std::log(2.0 * std::numbers::pi * std::numbers::e) + std::log(det));
}

double mutual_information(const CovMatrix& joint, std::span<const int> a, std::span<const int> b) {
  if (a.empty() || b.empty())
    throw Error(ErrorKind::RangeError, "mutual information needs two nonempty index sets");
  std::vector<int> ab(a.begin(), a.end());
  ab.insert(ab.end(), b.begin(), b.end());
  for (int idx : ab)
    if (idx < 0 || idx >= joint.dim())
      throw Error(ErrorKind::RangeError, "partition index out of range");
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = i + 1; j < ab.size(); ++j)
      if (ab[i] == ab[j]) throw Error(ErrorKind::RangeError, "partition sets overlap");
  return gaussian_entropy(joint.principal(a)) + gaussian_entropy(joint.principal(b)) -
         gaussian_entropy(joint.principal(ab));
}

double mi_side_noise(const ChannelModel& model) {
  const double d_norm =
      normalized_side_noise_determinant(model.rho_s1s2(), model.rho_s1z(), model.rho_s2z());
  if (d_norm <= kDegenerateTolerance) return std::numeric_limits<double>::infinity();
  const double r12 = model.rho_s1s2();
  return 0.5 * std::log((1.0 - r12 * r12) / d_norm);
}

}  // namespace noisypaper
