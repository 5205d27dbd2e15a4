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

#include <functional>
#include <span>
#include <vector>

namespace jmimo {

/// Pairwise (cascade) summation; the result depends only on the order of `xs`.
double pairwise_sum(std::span<const double> xs);

/// Sample mean and standard error of the mean (sample sd / sqrt(n)). Identical
/// inputs give a standard error of exactly zero.
struct MeanAndError {
    double mean = 0.0;
    double std_error = 0.0;
};
MeanAndError mean_and_error(std::span<const double> xs);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// One-sample KS statistic against a continuous CDF.
double ks_one_sample(std::vector<double> xs, const std::function<double(double)> &cdf);

/// Least-squares slope of y against x.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

} // namespace jmimo
