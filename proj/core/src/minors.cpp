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

#include "noisypaper/minors.hpp"

#include <array>
#include <cmath>

namespace noisypaper {
namespace {

using var::s1;
using var::s2;
using var::x;
using var::z;

template <std::size_t N>
struct MinorIndex {
  std::array<int, N> rows;
  std::array<int, N> cols;
};

template <std::size_t N>
double minor(const CovMatrix& k, const MinorIndex<N>& idx) {
  SquareArray<N> a{};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) a[i][j] = k(idx.rows[i], idx.cols[j]);
  return determinant(a);
}

// Row and column selections of K-hat, transcribed minor by minor.
constexpr MinorIndex<3> kDp{{s1, s2, z}, {s1, s2, z}};
constexpr MinorIndex<3> kDq1{{x, s2, z}, {x, s2, z}};
constexpr MinorIndex<3> kDa1{{s1, s2, z}, {x, s2, z}};
constexpr MinorIndex<3> kDl0{{s1, s2, z}, {x, s1, s2}};
constexpr MinorIndex<3> kDl1{{x, s2, z}, {x, s1, s2}};
constexpr MinorIndex<3> kDn{{x, s1, s2}, {x, s1, s2}};
constexpr MinorIndex<2> kDq1n{{x, s2}, {x, s2}};
constexpr MinorIndex<2> kDq2n{{x, s1}, {x, s1}};
constexpr MinorIndex<2> kDpn{{s1, s2}, {s1, s2}};
constexpr MinorIndex<2> kDpq1{{s2, z}, {s2, z}};
constexpr MinorIndex<2> kDl0l1{{x, s2}, {s1, s2}};
constexpr MinorIndex<2> kDpl1{{s2, z}, {s1, s2}};
constexpr MinorIndex<2> kDq1l0{{s2, z}, {x, s2}};

double correlation(const CovMatrix& k, int i, int j) {
  const double vi = k(i, i);
  const double vj = k(j, j);
  if (vi <= 0.0 || vj <= 0.0) return 0.0;
  return k(i, j) / std::sqrt(vi * vj);
}

}  // namespace

double normalized_side_noise_determinant(double r12, double r1z, double r2z) noexcept {
  return 1.0 + 2.0 * r12 * r1z * r2z - r12 * r12 - r1z * r1z - r2z * r2z;
}

MinorSet compute_minors(const CovMatrix& k) {
  MinorSet m;
  m.d = k.determinant();
  m.d_p = minor(k, kDp);
  m.d_q1 = minor(k, kDq1);
  m.d_a1 = minor(k, kDa1);
  m.d_l0 = minor(k, kDl0);
  m.d_l1 = minor(k, kDl1);
  m.d_n = minor(k, kDn);
  m.d_q1n = minor(k, kDq1n);
  m.d_q2n = minor(k, kDq2n);
  m.d_pn = minor(k, kDpn);
  m.d_pq1 = minor(k, kDpq1);
  m.d_l0l1 = minor(k, kDl0l1);
  m.d_pl1 = minor(k, kDpl1);
  m.d_q1l0 = minor(k, kDq1l0);
  m.d_p_norm = normalized_side_noise_determinant(correlation(k, s1, s2), correlation(k, s1, z),
                                                 correlation(k, s2, z));
  return m;
}

DerivedCovariances derived_covariances(const ChannelModel& model, double alpha) {
  const CovMatrix k = working_covariance(model);
  const double p = k(x, x), q1 = k(s1, s1), q2 = k(s2, s2), n = k(z, z);
  const double a1 = k(x, s1), a2 = k(x, s2), b = k(s1, s2);
  const double l0 = k(x, z), l1 = k(s1, z), l2 = k(s2, z);

  const double var_y = p + q1 + q2 + n + 2 * a1 + 2 * a2 + 2 * b + 2 * l0 + 2 * l1 + 2 * l2;
  const double cov_y_s2 = a2 + b + q2 + l2;
  const double var_u = p + alpha * alpha * q1 + 2 * alpha * a1;
  const double cov_u_y = p + (alpha + 1) * a1 + alpha * q1 + alpha * b + alpha * l1 + a2 + l0;
  const double cov_u_s2 = alpha * b + a2;
  const double cov_u_s1 = alpha * q1 + a1;

  return DerivedCovariances{
      CovMatrix{{var_y, cov_y_s2}, {cov_y_s2, q2}},
      CovMatrix{{var_u, cov_u_y, cov_u_s2}, {cov_u_y, var_y, cov_y_s2}, {cov_u_s2, cov_y_s2, q2}},
      CovMatrix{{var_u, cov_u_s1}, {cov_u_s1, q1}},
  };
}

CovMatrix input_noise_side_covariance(const ChannelModel& model) {
  const CovMatrix k = working_covariance(model);
  const double p = k(x, x), q1 = k(s1, s1), q2 = k(s2, s2), n = k(z, z);
  const double a1 = k(x, s1), a2 = k(x, s2), b = k(s1, s2);
  const double l0 = k(x, z), l1 = k(s1, z), l2 = k(s2, z);
  return CovMatrix{{p + n + 2 * l0, a1 + l1, a2 + l2}, {a1 + l1, q1, b}, {a2 + l2, b, q2}};
}

double det_y_s2_from_minors(const MinorSet& m) noexcept {
  return m.d_q1n + m.d_pn + m.d_pq1 + 2 * m.d_l0l1 - 2 * m.d_pl1 - 2 * m.d_q1l0;
}

double det_u_y_s2_from_minors(const MinorSet& m, double alpha) noexcept {
  return (alpha - 1) * (alpha - 1) * m.d_n + alpha * alpha * m.d_p +
         2 * alpha * (alpha - 1) * m.d_l0 + 2 * alpha * m.d_a1 + 2 * (alpha - 1) * m.d_l1 +
         m.d_q1;
}

double det_u_s1_from_minors(const MinorSet& m) noexcept { return m.d_q2n; }

double det_input_noise_side_from_minors(const MinorSet& m) noexcept {
  return m.d_n + 2 * m.d_l0 + m.d_p;
}

}  // namespace noisypaper
