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

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "jmimo/dims.hpp"
#include "jmimo/ensembles.hpp"

namespace jmimo {

/// Canonical completion of H11 to orthonormal columns: the rows of H21 are
/// sqrt(lambda_e) v_e' for the m - m_r largest eigenpairs of I - H11'H11, in
/// descending order. Requires k > 0; empty when m = m_r.
CMatrix complete_unitary(const CMatrix &h11, const ChannelDims &dims);

enum class Modulation { qpsk, gaussian };

struct SchemeConfig {
    ChannelDims dims{1, 1, 1};
    int n = 1000;                  // channel uses per frame
    int delay_l = 1;               // feedback delay in channel uses
    double rho = 10.0;             // linear per-mode SNR
    Modulation modulation = Modulation::qpsk;
    std::uint64_t seed = 0;
    int frames = 1;                // independent frames, each on its own stream
    bool hold_channel = false;     // one channel draw per frame instead of per use
    bool equalize_relay_power = true; // scale each relayed entry to unit power
    bool whiten_side_info = true;     // top side-information noise up to unit variance
    bool reuse_idle_slots = false;    // new symbols in relay slots that carry nothing
    bool keep_trace = false;
};

/// Transmitted vectors x^(i) of every frame, excluding the closing uses.
struct TransmitTrace {
    ChannelDims dims{1, 1, 1};
    int delay_l = 1;
    std::vector<std::vector<Eigen::VectorXcd>> frames;
};

struct PowerReport {
    std::vector<double> mode_power;   // E|x_j|^2 per transmit mode
    double first_use_relay_power = 0; // relay entries of the first use
    double new_symbol_power = 0;      // mean power of the new-symbol entries
};

struct SchemeReport {
    std::vector<double> per_stream_snr; // k measured SNRs, linear
    double noise_cov_error = 0;         // max |C - I| over the combined-noise covariance
    double achieved_rate = 0;           // k log2(1 + rho) n / (n + overhead_uses), bits per use
    std::optional<double> ber;          // QPSK only
    std::int64_t bit_errors = 0;
    std::int64_t bits = 0;
    int overhead_uses = 0;              // closing uses per frame
    std::int64_t extra_symbols = 0;     // symbols sent in idle relay slots
    std::vector<double> mode_power;
    double first_use_relay_power = 0;
    std::vector<double> frame_mutual_information; // bits per use, one per frame
    double max_combining_error = 0;     // max |H11'H11 + H21'H21 - I| over all uses
    double max_side_info_noise = 0;     // largest side-information noise variance
    double min_closing_gain = 0;        // smallest ||H'||_F^2 seen in the closing phase
    double stream_cross_correlation = 0;
    std::optional<TransmitTrace> trace;
};

/// Simulates the delayed-feedback zero-outage scheme and measures what the
/// receiver's peeling combiner recovers.
SchemeReport run_feedback_scheme(const SchemeConfig &cfg);

PowerReport power_check(const TransmitTrace &trace);

} // namespace jmimo
