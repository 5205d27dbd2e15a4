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

#include <complex>
#include <cstdint>
#include <limits>
#include <string_view>

namespace jmimo {

/// xoshiro256** generator with a Box-Muller normal source.
///
/// Streams are addressed by (master seed, experiment tag, index) and derived by
/// hashing the triple, so trial i always sees the same numbers no matter which
/// worker runs it or in which order. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    /// Independent stream keyed by (master, tag, index).
    static Rng stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Standard normal N(0, 1).
    double normal();

    /// Circularly symmetric CN(0, 1): real and imaginary parts each N(0, 1/2).
    std::complex<double> complex_normal();

private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

/// SplitMix64 finalizer; used for seed derivation.
std::uint64_t mix64(std::uint64_t x);

/// FNV-1a hash of an experiment name, for use as a stream tag.
constexpr std::uint64_t stream_tag(std::string_view name)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : name) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace jmimo
