// SPDX-License-Identifier: Apache-2.0
//
// jacobi-mimo: truncated-unitary MIMO channel analysis library
// Copyright (C) 2026 The jacobi-mimo authors
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
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace jmimo::cli {

/// Exit codes: 0 success, 1 numerical failure or replay mismatch, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumerical = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line `args` (without the program name). CSV goes to `out`
/// unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Parses a grid: "start:stop:step" (inclusive of both ends when step divides the
/// range), a comma-separated list, or a single number.
std::vector<double> parse_grid(const std::string &text);

/// Shortest round-trippable text with 10 significant digits, independent of locale.
std::string format_number(double v);

/// Lower-case hex SHA-256 of `data`.
std::string sha256_hex(const std::string &data);

} // namespace jmimo::cli
