/*
 * Copyright 2026 The binscore Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BINSCORE_CLI_HPP_
#define BINSCORE_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace binscore::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumericalWarning = 3;

/// Entry point shared by the binscore executable and the tests. `args`
/// excludes the program name. CSV goes to `out` unless --out is given;
/// diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

/// Rounds a proportion to a percentage with one decimal, half away from
/// zero, e.g. 0.60655 -> "60.7".
std::string percent_display(double proportion);

}  // namespace binscore::cli

#endif  // BINSCORE_CLI_HPP_
