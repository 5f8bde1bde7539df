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

#include "noisypaper/mc_oracle.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "noisypaper/errors.hpp"
#include "noisypaper/infotheory.hpp"
#include "noisypaper/rates.hpp"

namespace noisypaper {

SampleSet sample_gaussian(const CovMatrix& cov, std::size_t n, std::uint64_t seed,
                          std::vector<std::string> labels, std::uint64_t stream) {
  if (n < 2) throw Error(ErrorKind::RangeError, "need at least 2 samples");
  const int k = cov.dim();
  if (labels.empty())
    for (int j = 0; j < k; ++j) labels.push_back("v" + std::to_string(j));
  if (static_cast<int>(labels.size()) != k)
    throw Error(ErrorKind::RangeError, "label count does not match covariance dimension");
  if (!cov.is_psd()) throw Error(ErrorKind::NotPSD, "sampling covariance is not PSD");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov.matrix());
  const Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Eigen::MatrixXd factor = eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().transpose();

  Rng rng(seed, stream);
  Eigen::MatrixXd white(static_cast<Eigen::Index>(n), k);
  for (Eigen::Index i = 0; i < white.rows(); ++i)
    for (int j = 0; j < k; ++j) white(i, j) = rng.normal();

  SampleSet out;
  out.data = white * factor;  // factor is symmetric
  out.seed = seed;
  out.stream = stream;
  out.labels = std::move(labels);
  out.generator = std::string(Rng::kGenerator) + "/normal";
  return out;
}

CovMatrix empirical_covariance(const Eigen::MatrixXd& columns) {
  if (columns.rows() < 2) throw Error(ErrorKind::RangeError, "need at least 2 samples");
  const Eigen::RowVectorXd mean = columns.colwise().mean();
  const Eigen::MatrixXd centered = columns.rowwise() - mean;
  return CovMatrix(Eigen::MatrixXd((centered.transpose() * centered) /
                                   static_cast<double>(columns.rows() - 1)));
}

namespace {

void require_mc_size(std::size_t n) {
  if (n < 10000) throw Error(ErrorKind::RangeError, "Monte Carlo estimates need n >= 10^4");
}

}  // namespace

double mc_rate_estimate(const ChannelModel& model, double alpha, std::size_t n,
                        std::uint64_t seed, std::uint64_t stream) {
  require_mc_size(n);
  const SampleSet s =
      sample_gaussian(assemble_covariance(model), n, seed, {"X", "S1", "S2", "Z"}, stream);
  const auto x = s.data.col(var::x);
  const auto s1 = s.data.col(var::s1);
  const auto s2 = s.data.col(var::s2);
  const auto z = s.data.col(var::z);

  const bool with_s2 = model.s2_present();
  Eigen::MatrixXd cols(s.data.rows(), with_s2 ? 4 : 3);
  cols.col(0) = alpha * s1 + x;    // U
  cols.col(1) = x + s1 + s2 + z;   // Y
  cols.col(2) = s1;
  if (with_s2) cols.col(3) = s2;

  const CovMatrix joint = empirical_covariance(cols);
  constexpr std::array<int, 1> u{0};
  constexpr std::array<int, 1> side_tx{2};
  if (with_s2) {
    constexpr std::array<int, 2> y_s2{1, 3};
    return mutual_information(joint, u, y_s2) - mutual_information(joint, u, side_tx);
  }
  constexpr std::array<int, 1> y{1};
  return mutual_information(joint, u, y) - mutual_information(joint, u, side_tx);
}

double mc_mi_side_noise(const ChannelModel& model, std::size_t n, std::uint64_t seed,
                        std::uint64_t stream) {
  require_mc_size(n);
  const SampleSet s =
      sample_gaussian(assemble_covariance(model), n, seed, {"X", "S1", "S2", "Z"}, stream);
  if (model.s2_present()) {
    Eigen::MatrixXd cols(s.data.rows(), 3);
    cols << s.data.col(var::s1), s.data.col(var::s2), s.data.col(var::z);
    constexpr std::array<int, 2> sides{0, 1};
    constexpr std::array<int, 1> noise{2};
    return mutual_information(empirical_covariance(cols), sides, noise);
  }
  Eigen::MatrixXd cols(s.data.rows(), 2);
  cols << s.data.col(var::s1), s.data.col(var::z);
  constexpr std::array<int, 1> side{0};
  constexpr std::array<int, 1> noise{1};
  return mutual_information(empirical_covariance(cols), side, noise);
}

namespace {

double golden_section_max(const ChannelModel& model, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  auto f = [&](double a) {
    const double v = rate_alpha(model, a).nats;
    if (std::isinf(v) && v > 0)
      throw Error(ErrorKind::NoInteriorMax, "R(alpha) is unbounded near alpha = " + std::to_string(a));
    return v;
  };
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int iter = 0; iter < 400 && (hi - lo) > tol * std::max(1.0, std::abs(c)); ++iter) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double numeric_alpha_star(const ChannelModel& model, double tol) {
  double lo = -5.0;
  double hi = 5.0;
  for (int expansion = 0; expansion < 60; ++expansion) {
    const double a = golden_section_max(model, lo, hi, tol);
    const double width = hi - lo;
    const bool at_lo = a - lo < 1e-3 * width;
    const bool at_hi = hi - a < 1e-3 * width;
    if (!at_lo && !at_hi) return a;
    if (at_lo) lo -= width;
    if (at_hi) hi += width;
  }
  throw Error(ErrorKind::NoInteriorMax, "R(alpha) has no interior maximiser");
}

ChannelModel random_channel(Rng& rng, const RandomChannelOptions& opt) {
  auto log_uniform = [&](double lo, double hi) {
    return std::exp(rng.uniform(std::log(lo), std::log(hi)));
  };
  for (int attempt = 0; attempt < 100000; ++attempt) {
    ChannelParams p;
    p.p = log_uniform(opt.power_lo, opt.power_hi);
    p.q1 = log_uniform(opt.power_lo, opt.power_hi);
    p.q2 = log_uniform(opt.power_lo, opt.power_hi);
    p.n = log_uniform(opt.power_lo, opt.power_hi);
    p.rho_xs1 = rng.uniform(-opt.rho_bound, opt.rho_bound);
    p.rho_s1s2 = rng.uniform(-opt.rho_bound, opt.rho_bound);
    p.rho_s1z = rng.uniform(-opt.rho_bound, opt.rho_bound);
    p.rho_s2z = rng.uniform(-opt.rho_bound, opt.rho_bound);
    const double rho_xz = rng.uniform(-opt.rho_bound, opt.rho_bound);
    const bool drop_s2 = rng.uniform_open() < opt.s2_absent_probability;
    if (drop_s2) {
      p.q2 = 0.0;
      p.rho_s1s2 = 0.0;
      p.rho_s2z = 0.0;
    }
    p.markov_noise = opt.markov;
    if (!opt.markov) p.rho_xz = rho_xz;
    try {
      ChannelModel m = new_channel(p);
      if (min_eigenvalue(m.correlation_matrix()) >= opt.min_eigenvalue) return m;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotPSD) throw;
    }
  }
  throw Error(ErrorKind::RangeError, "random_channel: rejection sampling did not converge");
}

}  // namespace noisypaper
