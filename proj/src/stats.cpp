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

#include "jmimo/stats.hpp"

#include <algorithm>
#include <cmath>

#include "jmimo/errors.hpp"

namespace jmimo {

double pairwise_sum(std::span<const double> xs)
{
    if (xs.size() <= 16) {
        double s = 0.0;
        for (double x : xs)
            s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

MeanAndError mean_and_error(std::span<const double> xs)
{
    MeanAndError out;
    if (xs.empty())
        return out;
    const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    if (*lo == *hi) {
        out.mean = *lo;
        return out;
    }
    const double n = static_cast<double>(xs.size());
    out.mean = pairwise_sum(xs) / n;
    if (xs.size() < 2)
        return out;
    std::vector<double> sq(xs.size());
    std::transform(xs.begin(), xs.end(), sq.begin(), [&](double x) { return (x - out.mean) * (x - out.mean); });
    const double var = pairwise_sum(sq) / (n - 1.0);
    out.std_error = std::sqrt(var / n);
    return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw ContractViolation("KS statistic needs two non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0;
    std::size_t j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v)
            ++i;
        while (j < b.size() && b[j] == v)
            ++j;
        d = std::max(d, std::abs(double(i) / na - double(j) / nb));
    }
    return d;
}

double ks_one_sample(std::vector<double> xs, const std::function<double(double)> &cdf)
{
    if (xs.empty())
        throw ContractViolation("KS statistic needs a non-empty sample");
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - double(i) / n, double(i + 1) / n - f});
    }
    return d;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size() || x.size() < 2)
        throw ContractViolation("slope fit needs matching samples of size >= 2");
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0.0)
        throw ContractViolation("slope fit needs at least two distinct abscissae");
    return sxy / sxx;
}

} // namespace jmimo
