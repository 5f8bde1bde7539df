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

#include <functional>
#include <span>

namespace noisypaper {

/// Adaptive 15-point Gauss-Kronrod integral of f over [lo, hi]. Infinite
/// bounds are handled by the substitution x = tan(theta). Throws
/// QuadratureFailure if the error estimate stays above abs_tol.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 double abs_tol = 1e-9);

/// Sum of integrate() over consecutive breakpoints, for integrands with kinks.
double integrate_piecewise(const std::function<double(double)>& f, std::span<const double> breakpoints,
                           double abs_tol = 1e-9);

}  // namespace noisypaper
