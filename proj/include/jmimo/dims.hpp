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

#include <optional>
#include <string>

namespace jmimo {

/// Mode counts of a truncated-unitary channel: m_t transmit modes and m_r receive
/// modes addressed out of m supported modes. Validated on construction.
class ChannelDims {
public:
    ChannelDims(int m_t, int m_r, int m);

    int m_t() const { return m_t_; }
    int m_r() const { return m_r_; }
    int m() const { return m_; }

    int m_min() const { return m_t_ < m_r_ ? m_t_ : m_r_; }
    int m_max() const { return m_t_ < m_r_ ? m_r_ : m_t_; }

    /// Number of singular values pinned to one: max(m_t + m_r - m, 0).
    int k() const { return m_t_ + m_r_ > m_ ? m_t_ + m_r_ - m_ : 0; }

    /// Jacobi weight exponents; beta is negative when m_t + m_r > m.
    int alpha() const { return m_r_ > m_t_ ? m_r_ - m_t_ : m_t_ - m_r_; }
    int beta() const { return m_ - m_t_ - m_r_; }

    bool unpinned() const { return m_t_ + m_r_ <= m_; }

    /// Dimensions (m - m_r, m - m_t, m) of the residual channel left after removing
    /// the k unit singular values. Empty when either residual count is zero.
    std::optional<ChannelDims> residual() const;

    /// Same channel seen with transmitter and receiver swapped.
    ChannelDims transposed() const { return ChannelDims(m_r_, m_t_, m_); }

    std::string to_string() const;

    friend bool operator==(const ChannelDims &, const ChannelDims &) = default;

private:
    int m_t_;
    int m_r_;
    int m_;
};

} // namespace jmimo
