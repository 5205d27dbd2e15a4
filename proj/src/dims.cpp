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

#include "jmimo/dims.hpp"

#include "jmimo/errors.hpp"

namespace jmimo {

ChannelDims::ChannelDims(int m_t, int m_r, int m) : m_t_(m_t), m_r_(m_r), m_(m)
{
    if (m < 1)
        throw ContractViolation("m must be at least 1 (got " + std::to_string(m) + ")");
    if (m_t < 1 || m_t > m)
        throw ContractViolation("mt must satisfy 1 <= mt <= m (got mt=" + std::to_string(m_t) +
                                ", m=" + std::to_string(m) + ")");
    if (m_r < 1 || m_r > m)
        throw ContractViolation("mr must satisfy 1 <= mr <= m (got mr=" + std::to_string(m_r) +
                                ", m=" + std::to_string(m) + ")");
}

std::optional<ChannelDims> ChannelDims::residual() const
{
    const int rt = m_ - m_r_;
    const int rr = m_ - m_t_;
    if (rt == 0 || rr == 0)
        return std::nullopt;
    return ChannelDims(rt, rr, m_);
}

std::string ChannelDims::to_string() const
{
    return "(" + std::to_string(m_t_) + "," + std::to_string(m_r_) + "," + std::to_string(m_) + ")";
}

} // namespace jmimo
