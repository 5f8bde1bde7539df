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

#include "noisypaper/model.hpp"

#include <cmath>
#include <string>

#include "noisypaper/errors.hpp"

namespace noisypaper {
namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0)
    throw Error(ErrorKind::RangeError, std::string(name) + " must be a positive finite number");
}

void require_correlation(double v, const char* name) {
  if (!std::isfinite(v) || v < -1.0 || v > 1.0)
    throw Error(ErrorKind::RangeError, std::string(name) + " must lie in [-1, 1]");
}

}  // namespace

Eigen::Matrix4d ChannelModel::correlation_matrix() const {
  Eigen::Matrix4d r;
  // clang-format off
  r << 1.0,       rho_xs1_,  rho_xs2_,  rho_xz_,
       rho_xs1_,  1.0,       rho_s1s2_, rho_s1z_,
       rho_xs2_,  rho_s1s2_, 1.0,       rho_s2z_,
       rho_xz_,   rho_s1z_,  rho_s2z_,  1.0;
  // clang-format on
  return r;
}

ChannelParams ChannelModel::params() const {
  ChannelParams out;
  out.p = p_;
  out.q1 = q1_;
  out.q2 = q2_;
  out.n = n_;
  out.rho_xs1 = rho_xs1_;
  out.rho_xs2 = rho_xs2_;
  out.rho_xz = rho_xz_;
  out.rho_s1s2 = rho_s1s2_;
  out.rho_s1z = rho_s1z_;
  out.rho_s2z = rho_s2z_;
  out.markov_noise = markov_noise_;
  return out;
}

ChannelModel new_channel(const ChannelParams& in) {
  require_positive(in.p, "p");
  require_positive(in.q1, "q1");
  require_positive(in.n, "n");
  if (!std::isfinite(in.q2) || in.q2 < 0.0)
    throw Error(ErrorKind::RangeError, "q2 must be a nonnegative finite number");

  require_correlation(in.rho_xs1, "rho_xs1");
  require_correlation(in.rho_s1s2, "rho_s1s2");
  require_correlation(in.rho_s1z, "rho_s1z");
  require_correlation(in.rho_s2z, "rho_s2z");
  if (in.rho_xs2) require_correlation(*in.rho_xs2, "rho_xs2");
  if (in.rho_xz) require_correlation(*in.rho_xz, "rho_xz");

  if (in.q2 == 0.0 &&
      (in.rho_s1s2 != 0.0 || in.rho_s2z != 0.0 || (in.rho_xs2 && *in.rho_xs2 != 0.0)))
    throw Error(ErrorKind::RangeError, "q2 = 0 (S2 absent) requires every S2 correlation to be 0");

  ChannelModel m;
  m.p_ = in.p;
  m.q1_ = in.q1;
  m.q2_ = in.q2;
  m.n_ = in.n;
  m.rho_xs1_ = in.rho_xs1;
  m.rho_s1s2_ = in.rho_s1s2;
  m.rho_s1z_ = in.rho_s1z;
  m.rho_s2z_ = in.rho_s2z;
  m.markov_noise_ = in.markov_noise;

  // S2 -> S1 -> X.
  m.rho_xs2_ = in.rho_xs1 * in.rho_s1s2;
  if (in.rho_xs2 && std::abs(*in.rho_xs2 - m.rho_xs2_) > kRedundancyTolerance)
    throw Error(ErrorKind::MarkovViolation,
                "rho_xs2 = " + std::to_string(*in.rho_xs2) + " but rho_xs1 * rho_s1s2 = " +
                    std::to_string(m.rho_xs2_));

  if (in.markov_noise) {
    // X -> (S1,S2) -> Z.
    m.rho_xz_ = in.rho_xs1 * in.rho_s1z;
    if (in.rho_xz && std::abs(*in.rho_xz - m.rho_xz_) > kRedundancyTolerance)
      throw Error(ErrorKind::MarkovViolation,
                  "rho_xz = " + std::to_string(*in.rho_xz) + " but rho_xs1 * rho_s1z = " +
                      std::to_string(m.rho_xz_));
  } else {
    m.rho_xz_ = in.rho_xz.value_or(0.0);
  }

  const double lambda_min = min_eigenvalue(m.correlation_matrix());
  if (lambda_min < -kPsdTolerance)
    throw Error(ErrorKind::NotPSD, "correlation matrix of (X,S1,S2,Z) has eigenvalue " +
                                       std::to_string(lambda_min));
  return m;
}

ChannelModel markov_complete(const ChannelModel& model) {
  ChannelParams p = model.params();
  p.markov_noise = true;
  p.rho_xz.reset();
  return new_channel(p);
}

namespace {

Eigen::Matrix4d covariance_from(const ChannelModel& m, double q2) {
  const Eigen::Vector4d sigma(std::sqrt(m.p()), std::sqrt(m.q1()), std::sqrt(q2), std::sqrt(m.n()));
  Eigen::Matrix4d k = m.correlation_matrix().cwiseProduct(sigma * sigma.transpose());
  k.diagonal() << m.p(), m.q1(), q2, m.n();
  return k;
}

}  // namespace

CovMatrix assemble_covariance(const ChannelModel& model) {
  return CovMatrix(Eigen::MatrixXd(covariance_from(model, model.q2())));
}

CovMatrix working_covariance(const ChannelModel& model) {
  return CovMatrix(Eigen::MatrixXd(covariance_from(model, model.s2_present() ? model.q2() : 1.0)));
}

}  // namespace noisypaper
