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

#include <limits>
#include <optional>
#include <vector>

#include "jmimo/dims.hpp"

namespace jmimo {

/// Ergodic-capacity query; rho is the linear per-mode SNR. Rates are in bits.
struct CapacityQuery {
    ChannelDims dims;
    double rho = 0.0;
};

struct DmtVertex {
    double r = 0.0;
    double d = 0.0;
};

/// Optimal diversity-multiplexing curve. d(r) is infinite for r < infinite_below and
/// piecewise linear through `vertices` above it.
struct DmtCurve {
    std::vector<DmtVertex> vertices; // r ascending
    double infinite_below = 0.0;

    /// d*(r); +inf below the threshold, 0 past the last vertex.
    double evaluate(double r) const;
};

/// Result of removing the k pinned singular values from an outage query.
struct RateReduction {
    std::optional<ChannelDims> residual; // empty when the residual channel has no modes
    int m_t = 0;                         // residual mode counts, possibly zero
    int m_r = 0;
    int m = 0;
    double r_tilde = 0.0;

    /// True when the reduced problem has outage exactly 0.
    bool zero_outage() const;
};

/// Marginal density of one unordered squared singular value (requires m_t + m_r <= m):
///   f(x) = (1/m_min) sum_k b_k^{-1} P_k(1-2x)^2 x^alpha (1-x)^beta.
double eigen_density(const ChannelDims &dims, double lambda);

/// E[log2 det(I + rho H11'H11)]. Uses the density integral when m_t + m_r <= m and
/// peels off k unit singular values otherwise.
double ergodic_capacity(const CapacityQuery &q);
double ergodic_capacity(const ChannelDims &dims, double rho);

/// Outage of the single-transmit-mode channel at rate R bits:
/// I_x(m_r, m - m_r) with x = (2^R - 1)/rho, saturating at 1.
double outage_single_mode(int m_r, int m, double rate_bits, double rho);

/// Smallest rho/(2^R - 1) keeping single-mode outage below epsilon (linear).
double rho_norm(int m_r, int m, double epsilon);

/// Maps an outage query with k > 0 onto the residual channel at r~ = max(r - k, 0).
RateReduction outage_rate_reduction(const ChannelDims &dims, double r);

/// Optimal DMT curve for the channel.
DmtCurve dmt_optimal_curve(const ChannelDims &dims);

} // namespace jmimo
