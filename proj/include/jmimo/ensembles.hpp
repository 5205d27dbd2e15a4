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

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "jmimo/dims.hpp"
#include "jmimo/rng.hpp"

namespace jmimo {

using CMatrix = Eigen::MatrixXcd;

/// Default tolerance for classifying an eigenvalue as exactly 0 or exactly 1.
inline constexpr double kUnitTol = 1e-9;

/// One draw of the truncated channel. `full` holds the whole m x m unitary when it
/// was requested; the other three blocks are views into it.
struct ChannelRealization {
    ChannelDims dims;
    CMatrix h11;                 // m_r x m_t
    std::optional<CMatrix> full; // m x m

    bool has_full() const { return full.has_value(); }
    CMatrix h12() const; // m_r x (m - m_t)
    CMatrix h21() const; // (m - m_r) x m_t
    CMatrix h22() const; // (m - m_r) x (m - m_t)
};

struct SpectrumCounts {
    int n_unit = 0;
    int n_interior = 0;
    int n_zero = 0;
};

/// Squared singular values in ascending order, all in [0, 1]. Values within `tol`
/// of 0 or 1 are snapped to exactly 0 or 1 and counted as such.
struct SpectrumSample {
    std::vector<double> lambdas;
    SpectrumCounts counts;
    double tol = kUnitTol;
    int clamp_events = 0; // raw values that fell outside [0,1] by more than 1e-10
};

struct Lemma1Report {
    int n_unit_found = 0;
    int n_zero_found = 0;
    double residual_match_error = 0.0;
    double tol = kUnitTol;
};

/// rows x cols matrix of i.i.d. CN(0,1) entries, filled column by column.
CMatrix sample_ginibre(int rows, int cols, Rng &rng);

/// Haar-distributed m x m unitary: QR of a Ginibre matrix with the diagonal of R
/// rotated onto the positive reals.
CMatrix sample_haar_unitary(int m, Rng &rng);

/// First `cols` columns of a Haar unitary. For the same stream this is, up to
/// rounding, the leading block of sample_haar_unitary(m, rng).
CMatrix sample_haar_columns(int m, int cols, Rng &rng);

/// Top-left m_r x m_t block of a fresh Haar unitary. With keep_full the whole
/// unitary is kept so block identities can be checked.
ChannelRealization draw_channel(const ChannelDims &dims, Rng &rng, bool keep_full = false);

/// Eigenvalues of the smaller Gram matrix of H11 (m_min values).
SpectrumSample squared_singular_values(const ChannelRealization &real, double tol = kUnitTol);

/// Same as above for an arbitrary matrix (eigenvalues of the smaller Gram matrix).
SpectrumSample gram_spectrum(const CMatrix &h, double tol = kUnitTol);

/// Eigenvalues of (A+B)^{-1/2} A (A+B)^{-1/2} with A = G1'G1, B = G2'G2,
/// G1 ~ G(m1, n), G2 ~ G(m2, n). Requires m1, m2 >= n. Draws with a numerically
/// singular A+B are redrawn and counted in `singular_redraws` when given.
SpectrumSample sample_jacobi_spectrum_wishart(int m1, int m2, int n, Rng &rng,
                                              int *singular_redraws = nullptr);

/// Counts unit and zero eigenvalues of H11'H11 and matches the remaining ones
/// against the eigenvalues of H22 H22'. Needs a full realization with k > 0.
Lemma1Report verify_lemma1(const ChannelRealization &real, double tol = kUnitTol);

/// Ascending eigenvalues of a Hermitian matrix. Throws NumericalError on failure
/// or non-finite output.
Eigen::VectorXd hermitian_eigenvalues(const CMatrix &a);

} // namespace jmimo
