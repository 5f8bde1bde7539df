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
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace noisypaper::cli {

struct VerifyOptions {
  std::uint64_t seed = 42;
  /// Model count; each suite has its own default when unset.
  std::optional<int> trials;
  std::size_t n = 1'000'000;
  std::string marginal = "uniform";
  std::string marginal_s;  // empty: same as marginal
  double rho = 0.2;
};

inline const char* const kVerifySuites[] = {"minors", "rates", "mc", "copula", "typicality", "all"};

/// Runs one property suite. The result has "suite", "checks" (each with
/// name, achieved, tolerance, pass) and an overall "pass".
nlohmann::json run_verify_suite(const std::string& suite, const VerifyOptions& options);

}  // namespace noisypaper::cli
