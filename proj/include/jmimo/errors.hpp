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

#include <stdexcept>
#include <string>

namespace jmimo {

// Caller broke a documented precondition (bad dimensions, probability outside (0,1), ...).
class ContractViolation : public std::invalid_argument {
public:
    explicit ContractViolation(const std::string &what) : std::invalid_argument(what) {}
};

// An eigensolver or iteration did not produce a usable result.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace jmimo
