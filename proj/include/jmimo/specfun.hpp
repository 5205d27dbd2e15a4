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

#include <vector>

namespace jmimo {

/// Gauss rule for the weight x^alpha (1-x)^beta on [0, 1].
struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing, inside (0, 1)
    std::vector<double> weights; // positive, sum to B(alpha+1, beta+1)
    int alpha = 0;
    int beta = 0;

    int size() const { return static_cast<int>(nodes.size()); }
};

/// Jacobi polynomial P_k^{(alpha,beta)}(x) by the three-term recurrence.
double jacobi_poly(int k, int alpha, int beta, double x);

/// Squared norm of P_k^{(alpha,beta)}(1 - 2x) against x^alpha (1-x)^beta on [0, 1]:
///   b = 1/(2k+a+b+1) * C(2k+a+b, k) / C(2k+a+b, k+a),
/// evaluated in log-gamma space.
double jacobi_norm_b(int k, int alpha, int beta);

/// n-point Gauss-Jacobi rule on [0, 1] (Golub-Welsch on the symmetric Jacobi matrix
/// for [-1, 1], then mapped by x -> (1 - x)/2).
QuadratureRule gauss_jacobi_rule(int n, int alpha, int beta);

/// Regularized incomplete beta I_x(a, b) for real a, b > 0.
double reg_inc_beta(double x, double a, double b);

/// Inverse of reg_inc_beta in x.
double inv_reg_inc_beta(double p, double a, double b);

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double gaussian_q(double x);

/// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);

} // namespace jmimo
