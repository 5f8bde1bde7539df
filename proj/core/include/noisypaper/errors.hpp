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

#include <stdexcept>
#include <string>
#include <string_view>

namespace noisypaper {

enum class ErrorKind {
  NotPSD,
  MarkovViolation,
  RangeError,
  DegenerateDenominator,
  MarkovRequired,
  SingularCovariance,
  NoInteriorMax,
  OutOfRange,
  QuadratureFailure,
  InversionFailure,
  LengthMismatch,
  CrossCheckFailed,
};

/// Name used in CLI diagnostics, e.g. "NotPSD".
std::string_view to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this one exception type; callers
/// dispatch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace noisypaper
