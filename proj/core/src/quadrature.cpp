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

#include "noisypaper/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "noisypaper/errors.hpp"

namespace noisypaper {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;

double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

double adaptive(const std::function<double(double)>& g, double a, double b, double abs_tol) {
  double error = 0.0;
  double value = Kronrod::integrate(g, a, b, 20, 1e-11, &error);
  if (error <= abs_tol) return value;
  value = Kronrod::integrate(g, a, b, 40, 1e-14, &error);
  if (error <= abs_tol) return value;
  throw Error(ErrorKind::QuadratureFailure,
              "Gauss-Kronrod error estimate " + std::to_string(error) + " exceeds " +
                  std::to_string(abs_tol));
}

}  // namespace

double integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol) {
  if (std::isnan(lo) || std::isnan(hi))
    throw Error(ErrorKind::QuadratureFailure, "NaN integration bound");
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, abs_tol);

  constexpr double half_pi = std::numbers::pi / 2;
  const bool lo_inf = std::isinf(lo);
  const bool hi_inf = std::isinf(hi);

  if (!lo_inf && !hi_inf) return adaptive(f, lo, hi, abs_tol);

  if (lo_inf && hi_inf) {
    auto g = [&](double t) {
      const double x = std::tan(t);
      return finite_or_zero(f(x) * (1.0 + x * x));
    };
    return adaptive(g, -half_pi, half_pi, abs_tol);
  }
  if (hi_inf) {
    auto g = [&](double t) {
      const double u = std::tan(t);
      return finite_or_zero(f(lo + u) * (1.0 + u * u));
    };
    return adaptive(g, 0.0, half_pi, abs_tol);
  }
  auto g = [&](double t) {
    const double u = std::tan(t);
    return finite_or_zero(f(hi - u) * (1.0 + u * u));
  };
  return adaptive(g, 0.0, half_pi, abs_tol);
}

double integrate_piecewise(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           double abs_tol) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    total += integrate(f, breakpoints[i], breakpoints[i + 1], abs_tol);
  return total;
}

}  // namespace noisypaper
