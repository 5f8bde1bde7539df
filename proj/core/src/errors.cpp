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

#include "noisypaper/errors.hpp"

namespace noisypaper {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::MarkovViolation: return "MarkovViolation";
    case ErrorKind::RangeError: return "RangeError";
    case ErrorKind::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::MarkovRequired: return "MarkovRequired";
    case ErrorKind::SingularCovariance: return "SingularCovariance";
    case ErrorKind::NoInteriorMax: return "NoInteriorMax";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::InversionFailure: return "InversionFailure";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::CrossCheckFailed: return "CrossCheckFailed";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace noisypaper
