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
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "noisypaper/mc_oracle.hpp"

namespace noisypaper {

/// A continuous univariate law given by density, CDF and quantile handles.
///
/// Handles are stateless callables and safe to share across threads.
/// breakpoints() lists the support ends (possibly infinite) plus any interior
/// kinks of the density, in increasing order; integrals are split there.
class Marginal {
 public:
  using Fn = std::function<double(double)>;

  /// quantile may be empty, in which case it is obtained by bisection on cdf.
  Marginal(std::string name, Fn pdf, Fn cdf, Fn quantile, std::vector<double> breakpoints);

  static Marginal uniform(double a = 0.0, double b = 1.0);
  static Marginal normal(double mean = 0.0, double sigma = 1.0);
  static Marginal exponential(double lambda = 1.0);
  /// Piecewise-linear CDF through (x, F(x)) knots; x strictly increasing,
  /// F nondecreasing from 0 to 1.
  static Marginal tabulated(std::vector<std::pair<double, double>> knots, std::string name = "table");
  /// Reads "x,F" rows; a non-numeric first line and '#' comments are skipped.
  static Marginal tabulated_csv(std::istream& in, std::string name = "table");

  /// Registry lookup: "uniform(a,b)", "normal(mu,sigma)", "exponential(lambda)"
  /// (arguments optional) or "table:<path-to-csv>".
  static Marginal parse(std::string_view spec);

  const std::string& name() const noexcept { return name_; }
  double pdf(double x) const { return pdf_(x); }
  double cdf(double x) const { return cdf_(x); }
  double quantile(double u) const;
  double lower() const noexcept { return breakpoints_.front(); }
  double upper() const noexcept { return breakpoints_.back(); }
  std::span<const double> breakpoints() const noexcept { return breakpoints_; }

 private:
  std::string name_;
  Fn pdf_;
  Fn cdf_;
  Fn quantile_;
  std::vector<double> breakpoints_;
};

/// Joint law f_X f_S [1 + rho (2F_X - 1)(2F_S - 1)] tuned so that corr(X, S)
/// equals rho_target: rho = sigma_x sigma_s / (a_x a_s) * rho_target, with
/// a = integral of x f(x) (2F(x) - 1).
struct FgmSpec {
  Marginal x;
  Marginal s;
  double mean_x = 0, mean_s = 0;
  double sigma_x = 0, sigma_s = 0;
  double a_x = 0, a_s = 0;
  double rho_param = 0;
  double rho_target = 0;

  double density(double xv, double sv) const;
  /// P(S <= sv | X = xv).
  double conditional_cdf(double sv, double xv) const;
  /// Largest |corr| this marginal pair can reach: a_x a_s / (sigma_x sigma_s).
  double achievable_correlation() const noexcept { return a_x * a_s / (sigma_x * sigma_s); }
};

/// Moments by quadrature, then the copula parameter. Throws OutOfRange when
/// |rho_param| > 1, QuadratureFailure when an integral does not converge, and
/// RangeError for a marginal with vanishing a or variance.
FgmSpec build_fgm(Marginal x, Marginal s, double rho_target);

/// a = integral of x f(x) (2F(x) - 1) dx.
double fgm_moment(const Marginal& m);
/// integral of F(x)(1 - F(x)) dx; equals fgm_moment when the boundary term vanishes.
double fgm_existence_integral(const Marginal& m);

/// X by inverse CDF, then S by bisection of the conditional CDF on the
/// probability scale (to 1e-10) followed by the S quantile. Columns {X, S}.
SampleSet sample_fgm(const FgmSpec& spec, std::size_t n, std::uint64_t seed, std::uint64_t stream = 0);

/// Kolmogorov-Smirnov distance between the empirical law of samples and m.
double ks_distance(std::span<const double> samples, const Marginal& m);

struct FgmCorrelationReport {
  std::string marginal_x;
  std::string marginal_s;
  double target_rho = 0;
  double rho_param = 0;
  double empirical_rho = 0;
  double a_x = 0;
  double a_s = 0;
  double empirical_cov = 0;
  double predicted_cov = 0;  // rho_param * a_x * a_s
  double marginal_ks_x = 0;
  double marginal_ks_s = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

/// Correlation tolerance and KS threshold used by verify_fgm_correlation.
inline constexpr double kFgmRhoTolerance = 0.01;
inline constexpr double kFgmKsThreshold = 0.005;

FgmCorrelationReport verify_fgm_correlation(const FgmSpec& spec, std::size_t n, std::uint64_t seed);

}  // namespace noisypaper
