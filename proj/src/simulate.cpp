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

#include "jmimo/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "jmimo/analytic.hpp"
#include "jmimo/specfun.hpp"
#include "jmimo/stats.hpp"

namespace jmimo {

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr std::array<double, 8> kGlNodes = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                                            -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                                            0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGlWeights = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                                              0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};

double mutual_info_bits(const SpectrumSample &s, double rho)
{
    double sum = 0.0;
    for (double l : s.lambdas)
        sum += std::log2(1.0 + rho * l);
    return sum;
}

// E[Ps(rho g(T))] with T ~ Gamma(dof, 1), integrated over log T.
double conditional_repetition_error(const GainProfile &gp, double rho)
{
    const double n = gp.dof;
    const double t_lo = 1e-6 / std::max(rho, 1.0);
    const double t_hi = n + 12.0 * std::sqrt(n) + 40.0;
    const double log_norm = std::lgamma(n);

    double total = qpsk_symbol_error(rho * gp.gain(0.5 * t_lo)) * reg_lower_gamma(n, t_lo);
    const double u_lo = std::log(t_lo);
    const double u_hi = std::log(t_hi);
    const double step = std::numbers::ln2;
    for (double a = u_lo; a < u_hi; a += step) {
        const double b = std::min(a + step, u_hi);
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double panel = 0.0;
        for (std::size_t i = 0; i < kGlNodes.size(); ++i) {
            const double u = mid + half * kGlNodes[i];
            const double t = std::exp(u);
            const double density = std::exp(n * u - t - log_norm); // Gamma pdf times dt/du
            panel += kGlWeights[i] * qpsk_symbol_error(rho * gp.gain(t)) * density;
        }
        total += half * panel;
    }
    return std::min(total, 1.0);
}

double alamouti_threshold(double rho, double r)
{
    // log2(1 + S rho) < r log2(rho)  <=>  S < (rho^r - 1) / rho
    return (std::pow(rho, r) - 1.0) / rho;
}

void require_rho(double rho)
{
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw ContractViolation("rho must be finite and nonnegative");
}

} // namespace

std::uint64_t experiment_tag(std::string_view name, const ChannelDims &dims)
{
    std::uint64_t h = stream_tag(name);
    h = mix64(h ^ static_cast<std::uint64_t>(dims.m_t()));
    h = mix64(h ^ static_cast<std::uint64_t>(dims.m_r()));
    return mix64(h ^ static_cast<std::uint64_t>(dims.m()));
}

McEstimate summarize(const std::vector<double> &values, const McConfig &cfg)
{
    const MeanAndError me = mean_and_error(values);
    return {me.mean, me.std_error, static_cast<std::int64_t>(values.size()), cfg.master_seed};
}

double GainProfile::gain(double t) const
{
    double s = 0.0;
    for (double v : nu) {
        if (v == 1.0)
            s += 1.0;
        else if (v > 0.0)
            s += t * v / (t * v + 1.0 - v);
    }
    return s;
}

double GainProfile::gain_floor() const
{
    return static_cast<double>(std::count(nu.begin(), nu.end(), 1.0));
}

double GainProfile::gain_ceiling() const
{
    return static_cast<double>(std::count_if(nu.begin(), nu.end(), [](double v) { return v > 0.0; }));
}

double GainProfile::energy_for(double s) const
{
    if (!(s > gain_floor() && s < gain_ceiling()))
        throw ContractViolation("target gain outside the reachable range");
    double lo = -700.0;
    double hi = 700.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gain(std::exp(mid)) < s)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

GainProfile sample_gain_profile(const ChannelDims &dims, Rng &rng)
{
    const int mt = dims.m_t();
    const CMatrix g1 = sample_ginibre(dims.m_r(), mt, rng);
    const double energy = g1.squaredNorm();
    const CMatrix a = g1.adjoint() * g1 / energy;
    CMatrix s = a;
    if (dims.m() > dims.m_r()) {
        const CMatrix g2 = sample_ginibre(dims.m() - dims.m_r(), mt, rng);
        s += g2.adjoint() * g2;
    }
    Eigen::LLT<CMatrix> llt(s);
    if (llt.info() != Eigen::Success)
        throw NumericalError("Cholesky factorization of the Gram matrix failed");
    const CMatrix y = llt.matrixL().solve(a);
    CMatrix c = llt.matrixL().solve(CMatrix(y.adjoint()));
    c = 0.5 * (c + c.adjoint()).eval();
    const Eigen::VectorXd ev = hermitian_eigenvalues(c);

    GainProfile gp;
    gp.dof = dims.m_r() * mt;
    gp.energy = energy;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        double v = std::clamp(ev(i), 0.0, 1.0);
        if (v >= 1.0 - kUnitTol)
            v = 1.0;
        else if (v <= kUnitTol)
            v = 0.0;
        gp.nu.push_back(v);
    }
    return gp;
}

double qpsk_symbol_error(double gamma)
{
    const double q = gaussian_q(std::sqrt(std::max(gamma, 0.0)));
    return 2.0 * q - q * q;
}

McEstimate mc_ergodic_capacity(const ChannelDims &dims, double rho, const McConfig &cfg)
{
    require_rho(rho);
    const auto values = map_trials(cfg, experiment_tag("channel", dims), [&](Rng &rng, std::int64_t) {
        return mutual_info_bits(squared_singular_values(draw_channel(dims, rng)), rho);
    });
    return summarize(values, cfg);
}

McEstimate mc_outage_bits(const ChannelDims &dims, double rho, double rate_bits, const McConfig &cfg)
{
    require_rho(rho);
    if (!(rate_bits >= 0.0))
        throw ContractViolation("rate must be nonnegative");
    const auto values = map_trials(cfg, experiment_tag("channel", dims), [&](Rng &rng, std::int64_t) {
        const double mi = mutual_info_bits(squared_singular_values(draw_channel(dims, rng)), rho);
        return mi < rate_bits ? 1.0 : 0.0;
    });
    return summarize(values, cfg);
}

McEstimate mc_outage(const ChannelDims &dims, double rho, double r, const McConfig &cfg)
{
    if (!(r >= 0.0))
        throw ContractViolation("multiplexing ratio must be nonnegative");
    require_rho(rho);
    return mc_outage_bits(dims, rho, r * std::log2(1.0 + rho), cfg);
}

McEstimate mc_repetition_error(const ChannelDims &dims, double rho, const McConfig &cfg, RepetitionMode mode)
{
    require_rho(rho);
    const std::uint64_t tag = experiment_tag("repetition", dims);
    std::vector<double> values;
    switch (mode) {
    case RepetitionMode::symbol:
        values = map_trials(cfg, tag, [&](Rng &rng, std::int64_t) {
            const CMatrix h = draw_channel(dims, rng).h11;
            const bool bit_re = (rng() >> 63) != 0;
            const bool bit_im = (rng() >> 63) != 0;
            const std::complex<double> x(bit_re ? -std::numbers::sqrt2 / 2 : std::numbers::sqrt2 / 2,
                                         bit_im ? -std::numbers::sqrt2 / 2 : std::numbers::sqrt2 / 2);
            // slot j excites mode j only; MRC over all slots and receive modes
            std::complex<double> combined = 0.0;
            for (int j = 0; j < dims.m_t(); ++j)
                for (int i = 0; i < dims.m_r(); ++i) {
                    const std::complex<double> y = std::sqrt(rho) * h(i, j) * x + rng.complex_normal();
                    combined += std::conj(h(i, j)) * y;
                }
            const bool err = (combined.real() < 0.0) != bit_re || (combined.imag() < 0.0) != bit_im;
            return err ? 1.0 : 0.0;
        });
        break;
    case RepetitionMode::spectrum_average:
        values = map_trials(cfg, tag, [&](Rng &rng, std::int64_t) {
            const CMatrix h = draw_channel(dims, rng).h11;
            return qpsk_symbol_error(rho * h.squaredNorm());
        });
        break;
    case RepetitionMode::gain_quadrature:
        values = map_trials(cfg, tag, [&](Rng &rng, std::int64_t) {
            return conditional_repetition_error(sample_gain_profile(dims, rng), rho);
        });
        break;
    }
    return summarize(values, cfg);
}

McEstimate mc_alamouti_outage(int m, double rho, double r, const McConfig &cfg, AlamoutiMode mode)
{
    if (m < 2)
        throw ContractViolation("the 2x2 Alamouti code needs m >= 2");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw ContractViolation("rho must be positive and finite");
    if (!(r >= 0.0))
        throw ContractViolation("multiplexing ratio must be nonnegative");
    const ChannelDims dims(2, 2, m);
    const double threshold = alamouti_threshold(rho, r);
    const std::uint64_t tag = experiment_tag("alamouti", dims);

    std::vector<double> values;
    if (mode == AlamoutiMode::indicator) {
        values = map_trials(cfg, tag, [&](Rng &rng, std::int64_t) {
            return draw_channel(dims, rng).h11.squaredNorm() < threshold ? 1.0 : 0.0;
        });
    } else {
        values = map_trials(cfg, tag, [&](Rng &rng, std::int64_t) {
            const GainProfile gp = sample_gain_profile(dims, rng);
            if (threshold <= gp.gain_floor())
                return 0.0;
            if (threshold >= gp.gain_ceiling())
                return 1.0;
            return reg_lower_gamma(gp.dof, gp.energy_for(threshold));
        });
    }
    return summarize(values, cfg);
}

double estimate_diversity_slope(const std::vector<std::pair<double, double>> &points)
{
    if (points.size() < 3)
        throw ContractViolation("diversity slope needs at least 3 points");
    std::vector<double> x;
    std::vector<double> y;
    for (const auto &[rho, p] : points) {
        if (!(rho > 0.0) || !(p > 0.0))
            throw ContractViolation("diversity slope needs positive SNRs and probabilities");
        x.push_back(std::log10(rho));
        y.push_back(std::log10(p));
    }
    const double slope = least_squares_slope(x, y);
    return slope == 0.0 ? 0.0 : -slope;
}

std::vector<RayleighRow> rayleigh_compare(int m_t, int m_r, const std::vector<int> &m_list, double rho_bar,
                                          const McConfig &cfg, double r)
{
    if (!(rho_bar > 0.0) || !std::isfinite(rho_bar))
        throw ContractViolation("rho_bar must be positive and finite");
    for (int m : m_list)
        if (m < m_t + m_r)
            throw ContractViolation("Rayleigh comparison needs every m >= m_t + m_r");

    // Rayleigh reference: i.i.d. CN(0,1) entries, rho_bar / m_t per transmit antenna
    const ChannelDims ref_dims(m_t, m_r, m_t + m_r);
    const double rho_w = rho_bar / m_t;
    const double rate_bits = r * std::log2(1.0 + rho_bar);
    struct RefTrial {
        double mi = 0.0;
        std::vector<double> eig;
    };
    const auto ref = map_trials(cfg, experiment_tag("rayleigh-reference", ref_dims), [&](Rng &rng, std::int64_t) {
        const CMatrix g = sample_ginibre(m_r, m_t, rng);
        const CMatrix gram = m_t <= m_r ? CMatrix(g.adjoint() * g) : CMatrix(g * g.adjoint());
        const Eigen::VectorXd ev = hermitian_eigenvalues(gram);
        RefTrial t;
        for (Eigen::Index i = 0; i < ev.size(); ++i) {
            const double l = std::max(ev(i), 0.0);
            t.mi += std::log2(1.0 + rho_w * l);
            t.eig.push_back(l);
        }
        return t;
    });
    std::vector<double> ref_mi;
    std::vector<double> ref_out;
    std::vector<double> ref_eig;
    for (const RefTrial &t : ref) {
        ref_mi.push_back(t.mi);
        ref_out.push_back(t.mi < rate_bits ? 1.0 : 0.0);
        ref_eig.insert(ref_eig.end(), t.eig.begin(), t.eig.end());
    }
    const McEstimate cap_ref = summarize(ref_mi, cfg);
    const McEstimate out_ref = summarize(ref_out, cfg);

    std::vector<RayleighRow> rows;
    for (int m : m_list) {
        const ChannelDims dims(m_t, m_r, m);
        RayleighRow row;
        row.m = m;
        row.rho_bar = rho_bar;
        row.rho_mode = rho_bar * m / m_t;
        row.capacity_jacobi = ergodic_capacity(dims, row.rho_mode);
        row.capacity_rayleigh = cap_ref;
        row.outage_rayleigh = out_ref;
        row.expected_frobenius = double(m_t) * m_r / m;

        // SNR offset (dB) at which the Jacobi capacity reaches the Rayleigh one
        double lo = -30.0;
        double hi = 30.0;
        for (int it = 0; it < 100; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (ergodic_capacity(dims, row.rho_mode * std::pow(10.0, mid / 10.0)) < cap_ref.value)
                lo = mid;
            else
                hi = mid;
        }
        row.gap_db = 0.5 * (lo + hi);

        struct JacTrial {
            double frob = 0.0;
            bool outage = false;
            std::vector<double> scaled;
        };
        const auto jac = map_trials(cfg, experiment_tag("channel", dims), [&](Rng &rng, std::int64_t) {
            const SpectrumSample s = squared_singular_values(draw_channel(dims, rng));
            JacTrial t;
            for (double l : s.lambdas) {
                t.frob += l;
                t.scaled.push_back(m * l);
            }
            t.outage = mutual_info_bits(s, row.rho_mode) < rate_bits;
            return t;
        });
        std::vector<double> frob;
        std::vector<double> out;
        std::vector<double> scaled;
        for (const JacTrial &t : jac) {
            frob.push_back(t.frob);
            out.push_back(t.outage ? 1.0 : 0.0);
            scaled.insert(scaled.end(), t.scaled.begin(), t.scaled.end());
        }
        row.mean_frobenius = summarize(frob, cfg);
        row.outage_jacobi = summarize(out, cfg);
        row.ks_distance = ks_two_sample(std::move(scaled), ref_eig);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace jmimo
