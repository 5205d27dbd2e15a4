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

#include "jmimo/rng.hpp"

#include <cmath>
#include <numbers>

namespace jmimo {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t mix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed)
{
    std::uint64_t z = seed;
    for (auto &word : s_) {
        z = mix64(z);
        word = z;
    }
    // all-zero state is a fixed point of xoshiro
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0)
        s_[0] = 1;
}

Rng Rng::stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index)
{
    std::uint64_t key = mix64(master);
    key = mix64(key ^ tag);
    key = mix64(key ^ (index * 0xd1342543de82ef95ULL + 1));
    return Rng(key);
}

Rng::result_type Rng::operator()()
{
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform()
{
    // 53 random bits, shifted by half an ulp to stay off zero
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal()
{
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = radius * std::sin(angle);
    has_cached_ = true;
    return radius * std::cos(angle);
}

std::complex<double> Rng::complex_normal()
{
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 * 0.5, im * std::numbers::sqrt2 * 0.5};
}

} // namespace jmimo
