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

#include "jmimo/feedback.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "jmimo/errors.hpp"
#include "jmimo/simulate.hpp"

namespace jmimo {

namespace {

using CVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

// relay rows shorter than this are sent unscaled (or replaced when reuse is on)
constexpr double kIdleRow = 1e-6;

struct Symbol {
    Complex value;
    bool bit_re = false;
    bool bit_im = false;
};

Symbol draw_symbol(Modulation mod, Rng &rng)
{
    if (mod == Modulation::gaussian)
        return {rng.complex_normal(), false, false};
    const bool b0 = (rng() >> 63) != 0;
    const bool b1 = (rng() >> 63) != 0;
    constexpr double a = std::numbers::sqrt2 / 2;
    return {Complex(b0 ? -a : a, b1 ? -a : a), b0, b1};
}

struct Use {
    CMatrix h11;
    CMatrix h21;
    CVector x;
    CVector y;
    std::vector<double> scale;    // relay scaling applied to row e of this use's H21
    std::vector<bool> relayed;    // slot e of this use carries a relay
    std::vector<Symbol> symbols;  // new symbols, k first, then any extras
    std::vector<int> symbol_slot; // transmit entry of each symbol
};

double max_abs(const CMatrix &a)
{
    return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

void validate(const SchemeConfig &cfg)
{
    if (cfg.dims.k() < 1)
        throw ContractViolation("feedback scheme needs m_t + m_r - m >= 1, got " + cfg.dims.to_string());
    if (cfg.delay_l < 1)
        throw ContractViolation("feedback delay must be at least 1 channel use");
    if (cfg.n <= cfg.delay_l)
        throw ContractViolation("frame length must exceed the feedback delay");
    if (!(cfg.rho > 0.0) || !std::isfinite(cfg.rho))
        throw ContractViolation("rho must be positive and finite");
    if (cfg.frames < 1)
        throw ContractViolation("frame count must be positive");
}

} // namespace

CMatrix complete_unitary(const CMatrix &h11, const ChannelDims &dims)
{
    if (dims.k() < 1)
        throw ContractViolation("unitary completion needs m_t + m_r - m >= 1");
    const int mt = dims.m_t();
    const int q = dims.m() - dims.m_r();
    if (h11.rows() != dims.m_r() || h11.cols() != mt)
        throw ContractViolation("H11 shape does not match the channel dimensions");
    if (q == 0)
        return CMatrix(0, mt);

    CMatrix a = CMatrix::Identity(mt, mt) - h11.adjoint() * h11;
    a = 0.5 * (a + a.adjoint()).eval();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
    if (es.info() != Eigen::Success)
        throw NumericalError("eigendecomposition of I - H11'H11 failed");
    const Eigen::VectorXd &ev = es.eigenvalues();
    if (ev(0) < -1e-9)
        throw NumericalError("I - H11'H11 has a negative eigenvalue; H11 is not a contraction");

    CMatrix h21(q, mt);
    for (int e = 0; e < q; ++e) {
        const int idx = mt - 1 - e;
        h21.row(e) = std::sqrt(std::max(ev(idx), 0.0)) * es.eigenvectors().col(idx).adjoint();
    }
    return h21;
}

SchemeReport run_feedback_scheme(const SchemeConfig &cfg)
{
    validate(cfg);
    const ChannelDims &dims = cfg.dims;
    const int mt = dims.m_t();
    const int mr = dims.m_r();
    const int k = dims.k();
    const int q = dims.m() - mr;
    const int n = cfg.n;
    const int l = cfg.delay_l;
    const double srho = std::sqrt(cfg.rho);
    const std::uint64_t tag = experiment_tag("feedback", dims);

    SchemeReport rep;
    rep.overhead_uses = l * mt * q;
    rep.achieved_rate = k * std::log2(1.0 + cfg.rho) * n / double(n + rep.overhead_uses);
    rep.mode_power.assign(static_cast<std::size_t>(mt), 0.0);
    rep.min_closing_gain = std::numeric_limits<double>::infinity();
    if (cfg.keep_trace)
        rep.trace = TransmitTrace{dims, l, {}};

    CMatrix noise_cov = CMatrix::Zero(mt, mt);
    std::int64_t noise_count = 0;
    std::vector<double> sig(static_cast<std::size_t>(k), 0.0);
    std::vector<double> err(static_cast<std::size_t>(k), 0.0);
    double first_relay = 0.0;

    for (int frame = 0; frame < cfg.frames; ++frame) {
        Rng rng = Rng::stream(cfg.seed, tag, static_cast<std::uint64_t>(frame));
        std::vector<Use> uses(static_cast<std::size_t>(n));
        CMatrix held;
        if (cfg.hold_channel)
            held = draw_channel(dims, rng).h11;

        // transmitter and channel, forward in time
        for (int i = 0; i < n; ++i) {
            Use &u = uses[static_cast<std::size_t>(i)];
            u.h11 = cfg.hold_channel ? held : draw_channel(dims, rng).h11;
            u.h21 = complete_unitary(u.h11, dims);
            u.scale.assign(static_cast<std::size_t>(q), 1.0);
            u.relayed.assign(static_cast<std::size_t>(q), true);
            for (int e = 0; e < q; ++e) {
                const double norm = u.h21.row(e).norm();
                if (norm < kIdleRow && cfg.reuse_idle_slots)
                    u.relayed[static_cast<std::size_t>(e)] = false;
                else if (norm >= kIdleRow && cfg.equalize_relay_power)
                    u.scale[static_cast<std::size_t>(e)] = 1.0 / norm;
            }

            u.x = CVector::Zero(mt);
            for (int j = 0; j < k; ++j) {
                u.symbols.push_back(draw_symbol(cfg.modulation, rng));
                u.symbol_slot.push_back(j);
                u.x(j) = u.symbols.back().value;
            }
            for (int e = 0; e < q; ++e) {
                bool idle = i < l;
                if (!idle) {
                    const Use &src = uses[static_cast<std::size_t>(i - l)];
                    if (src.relayed[static_cast<std::size_t>(e)])
                        u.x(k + e) = src.scale[static_cast<std::size_t>(e)] * (src.h21.row(e) * src.x).value();
                    else
                        idle = true;
                }
                if (idle && cfg.reuse_idle_slots) {
                    u.symbols.push_back(draw_symbol(cfg.modulation, rng));
                    u.symbol_slot.push_back(k + e);
                    u.x(k + e) = u.symbols.back().value;
                    ++rep.extra_symbols;
                }
            }

            CVector z(mr);
            for (int r = 0; r < mr; ++r)
                z(r) = rng.complex_normal();
            u.y = srho * u.h11 * u.x + z;

            const CMatrix gram = u.h11.adjoint() * u.h11 + u.h21.adjoint() * u.h21;
            rep.max_combining_error =
                std::max(rep.max_combining_error, max_abs(gram - CMatrix::Identity(mt, mt)));
            for (int j = 0; j < mt; ++j)
                rep.mode_power[static_cast<std::size_t>(j)] += std::norm(u.x(j));
        }
        for (int e = 0; e < q; ++e)
            first_relay += std::norm(uses[0].x(k + e));

        // receiver, backward in time
        std::vector<CVector> combined(static_cast<std::size_t>(n));
        std::vector<CMatrix> sigma(static_cast<std::size_t>(n));
        double frame_bits = 0.0;
        for (int i = n - 1; i >= 0; --i) {
            const Use &u = uses[static_cast<std::size_t>(i)];
            CVector s = CVector::Zero(q);
            CMatrix d = CMatrix::Zero(q, q);
            if (i + l < n) {
                const auto j = static_cast<std::size_t>(i + l);
                CVector back = CVector::Zero(q);
                for (int e = 0; e < q; ++e)
                    if (u.relayed[static_cast<std::size_t>(e)])
                        back(e) = 1.0 / u.scale[static_cast<std::size_t>(e)];
                const CMatrix bot = sigma[j].bottomRightCorner(q, q);
                d = back.asDiagonal() * bot * back.conjugate().asDiagonal();
                s = back.asDiagonal() * combined[j].tail(q);
            } else {
                // closing: each relay entry by repetition over m_t uses with MRC
                for (int e = 0; e < q; ++e) {
                    if (!u.relayed[static_cast<std::size_t>(e)])
                        continue;
                    const double sc = u.scale[static_cast<std::size_t>(e)];
                    const Complex value = sc * (u.h21.row(e) * u.x).value();
                    const CMatrix hc = cfg.hold_channel ? held : draw_channel(dims, rng).h11;
                    const double gain = hc.squaredNorm();
                    Complex acc = 0.0;
                    for (int slot = 0; slot < mt; ++slot) {
                        CVector z(mr);
                        for (int r = 0; r < mr; ++r)
                            z(r) = rng.complex_normal();
                        const CVector yc = srho * hc.col(slot) * value + z;
                        acc += hc.col(slot).dot(yc);
                    }
                    s(e) = acc / (gain * sc);
                    d(e, e) = 1.0 / (gain * sc * sc);
                    rep.min_closing_gain = std::min(rep.min_closing_gain, gain);
                }
            }
            for (int e = 0; e < q; ++e) {
                const double var = d(e, e).real();
                rep.max_side_info_noise = std::max(rep.max_side_info_noise, var);
                if (var > 1.0 + 1e-9)
                    throw NumericalError("side information below SNR rho");
                if (cfg.whiten_side_info && var < 1.0) {
                    s(e) += std::sqrt(1.0 - var) * rng.complex_normal();
                    d(e, e) = 1.0;
                }
            }

            combined[static_cast<std::size_t>(i)] = u.h11.adjoint() * u.y + u.h21.adjoint() * s;
            CMatrix sg = u.h11.adjoint() * u.h11 + u.h21.adjoint() * d * u.h21;
            sigma[static_cast<std::size_t>(i)] = 0.5 * (sg + sg.adjoint());
            for (int j = 0; j < k; ++j)
                frame_bits += std::log2(1.0 + cfg.rho / sigma[static_cast<std::size_t>(i)](j, j).real());
        }
        rep.frame_mutual_information.push_back(frame_bits / (n + rep.overhead_uses));

        // measurements
        for (int i = 0; i < n; ++i) {
            const Use &u = uses[static_cast<std::size_t>(i)];
            const CVector &c = combined[static_cast<std::size_t>(i)];
            const CVector e = c - srho * u.x;
            noise_cov += e * e.adjoint();
            ++noise_count;
            for (int j = 0; j < k; ++j) {
                sig[static_cast<std::size_t>(j)] += std::norm(u.x(j));
                err[static_cast<std::size_t>(j)] += std::norm(e(j));
            }
            if (cfg.modulation == Modulation::qpsk) {
                for (std::size_t t = 0; t < u.symbols.size(); ++t) {
                    const Complex v = c(u.symbol_slot[t]);
                    rep.bit_errors += ((v.real() < 0.0) != u.symbols[t].bit_re) ? 1 : 0;
                    rep.bit_errors += ((v.imag() < 0.0) != u.symbols[t].bit_im) ? 1 : 0;
                    rep.bits += 2;
                }
            }
        }
        if (rep.trace) {
            std::vector<CVector> xs;
            xs.reserve(uses.size());
            for (const Use &u : uses)
                xs.push_back(u.x);
            rep.trace->frames.push_back(std::move(xs));
        }
    }

    const double total_uses = double(n) * cfg.frames;
    for (double &p : rep.mode_power)
        p /= total_uses;
    rep.first_use_relay_power = q > 0 ? first_relay / (double(q) * cfg.frames) : 0.0;
    noise_cov /= double(noise_count);
    rep.noise_cov_error = max_abs(noise_cov - CMatrix::Identity(mt, mt));
    for (int j = 0; j < k; ++j)
        rep.per_stream_snr.push_back(cfg.rho * sig[static_cast<std::size_t>(j)] / err[static_cast<std::size_t>(j)]);
    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            const double c = std::abs(noise_cov(a, b)) / std::sqrt(noise_cov(a, a).real() * noise_cov(b, b).real());
            rep.stream_cross_correlation = std::max(rep.stream_cross_correlation, c);
        }
    if (cfg.modulation == Modulation::qpsk)
        rep.ber = double(rep.bit_errors) / double(rep.bits);
    if (!std::isfinite(rep.min_closing_gain))
        rep.min_closing_gain = 0.0;
    return rep;
}

PowerReport power_check(const TransmitTrace &trace)
{
    const int mt = trace.dims.m_t();
    const int k = trace.dims.k();
    const int q = trace.dims.m() - trace.dims.m_r();
    PowerReport rep;
    rep.mode_power.assign(static_cast<std::size_t>(mt), 0.0);
    std::int64_t uses = 0;
    double first = 0.0;
    double fresh = 0.0;
    for (const auto &frame : trace.frames) {
        if (frame.empty())
            continue;
        for (const CVector &x : frame) {
            if (x.size() != mt)
                throw ContractViolation("trace vector length does not match m_t");
            for (int j = 0; j < mt; ++j)
                rep.mode_power[static_cast<std::size_t>(j)] += std::norm(x(j));
            for (int j = 0; j < k; ++j)
                fresh += std::norm(x(j));
            ++uses;
        }
        for (int e = 0; e < q; ++e)
            first += std::norm(frame.front()(k + e));
    }
    if (uses == 0)
        throw ContractViolation("power check needs a non-empty trace");
    for (double &p : rep.mode_power)
        p /= double(uses);
    rep.new_symbol_power = fresh / (double(uses) * k);
    rep.first_use_relay_power = q > 0 ? first / (double(q) * trace.frames.size()) : 0.0;
    return rep;
}

} // namespace jmimo
