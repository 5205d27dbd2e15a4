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

#include "jmimo/analytic.hpp"

#include <cmath>

#include "jmimo/errors.hpp"
#include "jmimo/specfun.hpp"

namespace jmimo {

namespace {

// m_min * f(lambda), i.e. the density without the 1/m_min factor.
double weighted_kernel(int m_min, int alpha, int beta, double lambda)
{
    const double x = 1.0 - 2.0 * lambda;
    double sum = 0.0;
    for (int k = 0; k < m_min; ++k) {
        const double p = jacobi_poly(k, alpha, beta, x);
        sum += p * p / jacobi_norm_b(k, alpha, beta);
    }
    return sum * std::pow(lambda, alpha) * std::pow(1.0 - lambda, beta);
}

// Integral of log2(1 + rho x) m_min f(x) over [0,1]. The log has a branch point at
// -1/rho, so the interval is split into panels that double in width away from 0;
// each panel sees the singularity at least one panel width away.
double case1_capacity(const ChannelDims &dims, double rho)
{
    if (rho == 0.0)
        return 0.0;
    const int m_min = dims.m_min();
    const int alpha = dims.alpha();
    const int beta = dims.beta();

    // polynomial part has degree 2(m_min - 1) + alpha + beta
    const int nodes = m_min + 32 + (alpha + beta + 1) / 2;
    const QuadratureRule rule = gauss_jacobi_rule(nodes, 0, 0);

    std::vector<double> edges{0.0};
    if (rho > 1.0) {
        for (double t = 1.0 / rho; t < 1.0; t *= 2.0)
            edges.push_back(t);
    }
    edges.push_back(1.0);

    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p];
        const double width = edges[p + 1] - lo;
        double panel = 0.0;
        for (int i = 0; i < rule.size(); ++i) {
            const double x = lo + width * rule.nodes[static_cast<std::size_t>(i)];
            panel += rule.weights[static_cast<std::size_t>(i)] * std::log2(1.0 + rho * x) *
                     weighted_kernel(m_min, alpha, beta, x);
        }
        total += width * panel;
    }
    return total;
}

} // namespace

double DmtCurve::evaluate(double r) const
{
    if (r < infinite_below)
        return std::numeric_limits<double>::infinity();
    if (vertices.empty() || r >= vertices.back().r)
        return 0.0;
    if (r <= vertices.front().r)
        return vertices.front().d;
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
        const DmtVertex &a = vertices[i];
        const DmtVertex &b = vertices[i + 1];
        if (r <= b.r)
            return a.d + (b.d - a.d) * (r - a.r) / (b.r - a.r);
    }
    return 0.0;
}

bool RateReduction::zero_outage() const
{
    return r_tilde <= 0.0;
}

double eigen_density(const ChannelDims &dims, double lambda)
{
    if (!dims.unpinned())
        throw ContractViolation("eigen_density needs m_t + m_r <= m, got dims " + dims.to_string());
    if (!(lambda >= 0.0 && lambda <= 1.0))
        return 0.0;
    return weighted_kernel(dims.m_min(), dims.alpha(), dims.beta(), lambda) / dims.m_min();
}

double ergodic_capacity(const CapacityQuery &q)
{
    if (!(q.rho >= 0.0) || !std::isfinite(q.rho))
        throw ContractViolation("rho must be finite and nonnegative");
    const ChannelDims &dims = q.dims;
    if (dims.unpinned())
        return case1_capacity(dims, q.rho);

    const double pinned = dims.k() * std::log2(1.0 + q.rho);
    const std::optional<ChannelDims> res = dims.residual();
    if (!res)
        return pinned;
    return pinned + ergodic_capacity(CapacityQuery{*res, q.rho});
}

double ergodic_capacity(const ChannelDims &dims, double rho)
{
    return ergodic_capacity(CapacityQuery{dims, rho});
}

double outage_single_mode(int m_r, int m, double rate_bits, double rho)
{
    if (m_r < 1 || m < m_r + 1)
        throw ContractViolation("single-mode outage needs 1 <= m_r and m >= m_r + 1");
    if (!(rate_bits >= 0.0))
        throw ContractViolation("rate must be nonnegative");
    if (!(rho >= 0.0))
        throw ContractViolation("rho must be nonnegative");
    if (rate_bits == 0.0)
        return 0.0;
    if (rho == 0.0)
        return 1.0;
    const double x = std::expm1(rate_bits * std::log(2.0)) / rho;
    if (x >= 1.0)
        return 1.0;
    return reg_inc_beta(x, m_r, m - m_r);
}

double rho_norm(int m_r, int m, double epsilon)
{
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw ContractViolation("target outage epsilon must lie in (0, 1)");
    if (m_r < 1 || m < m_r)
        throw ContractViolation("rho_norm needs 1 <= m_r <= m");
    if (m == m_r)
        return 1.0;
    return 1.0 / inv_reg_inc_beta(epsilon, m_r, m - m_r);
}

RateReduction outage_rate_reduction(const ChannelDims &dims, double r)
{
    if (dims.k() <= 0)
        throw ContractViolation("rate reduction needs m_t + m_r > m, got dims " + dims.to_string());
    if (!(r >= 0.0))
        throw ContractViolation("multiplexing ratio must be nonnegative");
    RateReduction out;
    out.m_t = dims.m() - dims.m_r();
    out.m_r = dims.m() - dims.m_t();
    out.m = dims.m();
    out.residual = dims.residual();
    out.r_tilde = std::max(r - dims.k(), 0.0);
    return out;
}

DmtCurve dmt_optimal_curve(const ChannelDims &dims)
{
    DmtCurve curve;
    if (dims.unpinned()) {
        for (int j = 0; j <= dims.m_min(); ++j)
            curve.vertices.push_back({double(j), double((dims.m_t() - j) * (dims.m_r() - j))});
        return curve;
    }
    const double shift = dims.k();
    curve.infinite_below = shift;
    if (const auto res = dims.residual()) {
        for (const DmtVertex &v : dmt_optimal_curve(*res).vertices)
            curve.vertices.push_back({v.r + shift, v.d});
    } else {
        curve.vertices.push_back({shift, 0.0});
    }
    return curve;
}

} // namespace jmimo
