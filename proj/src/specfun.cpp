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

#include "jmimo/specfun.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "jmimo/errors.hpp"

namespace jmimo {

double jacobi_poly(int k, int alpha, int beta, double x)
{
    if (k < 0 || alpha < 0 || beta < 0)
        throw ContractViolation("jacobi_poly needs k, alpha, beta >= 0");
    if (k == 0)
        return 1.0;
    const double a = alpha;
    const double b = beta;
    double p_prev = 1.0;
    double p = 0.5 * ((a + b + 2.0) * x + (a - b));
    for (int n = 2; n <= k; ++n) {
        const double s = 2.0 * n + a + b;
        const double c0 = 2.0 * n * (n + a + b) * (s - 2.0);
        const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        const double c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
        const double next = (c1 * p - c2 * p_prev) / c0;
        p_prev = p;
        p = next;
    }
    return p;
}

double jacobi_norm_b(int k, int alpha, int beta)
{
    if (k < 0 || alpha < 0 || beta < 0)
        throw ContractViolation("jacobi_norm_b needs k, alpha, beta >= 0");
    // C(N,k)/C(N,k+a) = Gamma(k+a+1) Gamma(k+b+1) / (Gamma(k+1) Gamma(k+a+b+1)) with N = 2k+a+b
    const double a = alpha;
    const double b = beta;
    const double log_ratio = std::lgamma(k + a + 1.0) + std::lgamma(k + b + 1.0) -
                             std::lgamma(k + 1.0) - std::lgamma(k + a + b + 1.0);
    return std::exp(log_ratio) / (2.0 * k + a + b + 1.0);
}

QuadratureRule gauss_jacobi_rule(int n, int alpha, int beta)
{
    if (n < 1)
        throw ContractViolation("quadrature needs at least one node");
    if (alpha < 0 || beta < 0)
        throw ContractViolation("quadrature exponents must be nonnegative");

    // Monic recurrence for (1-x)^a (1+x)^b on [-1, 1]. Mapping x -> (1-x)/2 sends
    // (1-x)^a to the exponent of lambda, so a = alpha and b = beta.
    const double a = alpha;
    const double b = beta;
    Eigen::VectorXd diag(n);
    Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
    for (int j = 0; j < n; ++j) {
        const double s = 2.0 * j + a + b;
        diag(j) = (j == 0) ? (b - a) / (a + b + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (int j = 1; j < n; ++j) {
        const double s = 2.0 * j + a + b;
        const double num = 4.0 * j * (j + a) * (j + b) * (j + a + b);
        const double den = s * s * (s + 1.0) * (s - 1.0);
        sub(j - 1) = std::sqrt(num / den);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success)
        throw NumericalError("Golub-Welsch eigensolver did not converge");

    // total mass on [0,1] is B(alpha+1, beta+1); the [-1,1] factor 2^{a+b+1} cancels
    const double mass = std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0));

    QuadratureRule rule;
    rule.alpha = alpha;
    rule.beta = beta;
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // eigenvalues ascend in x, so lambda = (1-x)/2 descends; fill back to front
    for (int j = 0; j < n; ++j) {
        const double x = es.eigenvalues()(j);
        const double v0 = es.eigenvectors()(0, j);
        const auto slot = static_cast<std::size_t>(n - 1 - j);
        rule.nodes[slot] = 0.5 * (1.0 - x);
        rule.weights[slot] = mass * v0 * v0;
    }
    return rule;
}

double reg_inc_beta(double x, double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw ContractViolation("incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw ContractViolation("incomplete beta argument must lie in [0, 1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    return boost::math::ibeta(a, b, x);
}

double inv_reg_inc_beta(double p, double a, double b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw ContractViolation("inverse incomplete beta needs a, b > 0");
    if (!(p >= 0.0 && p <= 1.0))
        throw ContractViolation("probability must lie in [0, 1]");
    if (p == 0.0)
        return 0.0;
    if (p == 1.0)
        return 1.0;
    return boost::math::ibeta_inv(a, b, p);
}

double gaussian_q(double x)
{
    return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

double reg_lower_gamma(double a, double x)
{
    if (!(a > 0.0))
        throw ContractViolation("incomplete gamma needs a > 0");
    if (x <= 0.0)
        return 0.0;
    return boost::math::gamma_p(a, x);
}

} // namespace jmimo
