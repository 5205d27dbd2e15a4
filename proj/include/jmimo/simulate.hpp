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

#include <algorithm>
#include <cstdint>
#include <exception>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "jmimo/dims.hpp"
#include "jmimo/ensembles.hpp"
#include "jmimo/errors.hpp"
#include "jmimo/rng.hpp"

namespace jmimo {

/// Monte-Carlo run settings. `workers` changes wall time only, never results.
struct McConfig {
    std::int64_t trials = 10000;
    std::uint64_t master_seed = 0;
    int workers = 1;
};

struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

/// Stream tag for an experiment on a given channel.
std::uint64_t experiment_tag(std::string_view name, const ChannelDims &dims);

/// Runs fn(rng, trial_index) for every trial, each on its own keyed stream, and
/// returns the results in trial order.
template <class Fn>
auto map_trials(const McConfig &cfg, std::uint64_t tag, Fn &&fn)
    -> std::vector<decltype(fn(std::declval<Rng &>(), std::int64_t{}))>
{
    using T = decltype(fn(std::declval<Rng &>(), std::int64_t{}));
    if (cfg.trials < 1)
        throw ContractViolation("trial count must be positive");
    if (cfg.workers < 1)
        throw ContractViolation("worker count must be positive");

    std::vector<T> out(static_cast<std::size_t>(cfg.trials));
    auto run_range = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i) {
            Rng rng = Rng::stream(cfg.master_seed, tag, static_cast<std::uint64_t>(i));
            out[static_cast<std::size_t>(i)] = fn(rng, i);
        }
    };

    const std::int64_t workers = std::min<std::int64_t>(cfg.workers, cfg.trials);
    if (workers == 1) {
        run_range(0, cfg.trials);
        return out;
    }
    std::vector<std::jthread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    const std::int64_t chunk = (cfg.trials + workers - 1) / workers;
    for (std::int64_t w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(cfg.trials, begin + chunk);
        pool.emplace_back([&, w, begin, end] {
            try {
                run_range(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (const auto &e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

/// Mean and standard error of per-trial values, stamped with the run settings.
McEstimate summarize(const std::vector<double> &values, const McConfig &cfg);

/// ||H11||_F^2 as a function of the energy t = ||G1||_F^2 of the Gaussian block that
/// generates H11 = G1 (G'G)^{-1/2}, with the direction of G1 and the rest of G held
/// fixed: g(t) = sum_i t nu_i / (t nu_i + 1 - nu_i). The energy is Gamma(dof, 1)
/// and independent of the nu_i, which is what the conditional estimators integrate.
struct GainProfile {
    std::vector<double> nu; // in [0, 1]; values within kUnitTol of 0 or 1 snapped
    int dof = 1;            // m_r * m_t
    double energy = 1.0;    // the energy actually drawn; gain(energy) = ||H11||_F^2

    double gain(double t) const;
    double gain_floor() const;   // lim t -> 0 of gain(t)
    double gain_ceiling() const; // lim t -> inf of gain(t)
    /// Solves gain(t) = s for t; requires gain_floor() < s < gain_ceiling().
    double energy_for(double s) const;
};

GainProfile sample_gain_profile(const ChannelDims &dims, Rng &rng);

/// QPSK symbol error probability at SNR gamma (Es/N0).
double qpsk_symbol_error(double gamma);

/// E[log2 det(I + rho H11'H11)] over fresh truncated-Haar draws.
McEstimate mc_ergodic_capacity(const ChannelDims &dims, double rho, const McConfig &cfg);

/// P[sum log2(1 + rho lambda_i) < r log2(1 + rho)].
McEstimate mc_outage(const ChannelDims &dims, double rho, double r, const McConfig &cfg);

/// Same with an absolute rate in bits.
McEstimate mc_outage_bits(const ChannelDims &dims, double rho, double rate_bits, const McConfig &cfg);

enum class RepetitionMode {
    symbol,            // transmit QPSK, add noise, MRC-detect, count errors
    spectrum_average,  // average the conditional QPSK error over sampled spectra
    gain_quadrature,   // additionally integrate out the Gamma-distributed energy
};

/// Symbol error rate of the m_t-slot repetition scheme with one QPSK symbol per
/// codeword and MRC at the receiver (effective SNR rho ||H11||_F^2).
McEstimate mc_repetition_error(const ChannelDims &dims, double rho, const McConfig &cfg,
                               RepetitionMode mode = RepetitionMode::gain_quadrature);

enum class AlamoutiMode {
    indicator,        // count draws in outage
    gain_conditional, // average P[outage | direction] in closed form
};

/// P[log2(1 + ||H11||_F^2 rho) < r log2(rho)] for the 2x2 Alamouti code on (2,2,m).
McEstimate mc_alamouti_outage(int m, double rho, double r, const McConfig &cfg,
                              AlamoutiMode mode = AlamoutiMode::indicator);

/// Diversity estimate: minus the least-squares slope of log10 P against log10 rho.
double estimate_diversity_slope(const std::vector<std::pair<double, double>> &points);

struct RayleighRow {
    int m = 0;
    double rho_bar = 0.0;          // average SNR per receive mode (linear)
    double rho_mode = 0.0;         // per-mode rho giving that rho_bar on the Jacobi channel
    double capacity_jacobi = 0.0;  // analytic, bits
    McEstimate capacity_rayleigh;  // i.i.d. CN(0,1) channel at rho_bar / m_t per antenna
    double gap_db = 0.0;           // SNR offset making the Jacobi capacity match Rayleigh
    McEstimate outage_jacobi;      // at rate r log2(1 + rho_bar)
    McEstimate outage_rayleigh;
    double ks_distance = 0.0;      // m*lambda (Jacobi) vs Wishart eigenvalues
    McEstimate mean_frobenius;     // sample mean of ||H11||_F^2
    double expected_frobenius = 0.0;
};

/// Compares the Jacobi channel against i.i.d. Rayleigh on the common rho_bar axis.
std::vector<RayleighRow> rayleigh_compare(int m_t, int m_r, const std::vector<int> &m_list,
                                          double rho_bar, const McConfig &cfg, double r = 1.0);

} // namespace jmimo
