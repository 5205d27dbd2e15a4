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

#include "jmimo/ensembles.hpp"

#include <algorithm>
#include <cmath>

#include "jmimo/errors.hpp"

namespace jmimo {

namespace {

// QR with the phase of each diagonal entry of R moved into Q.
CMatrix haar_from_ginibre(const CMatrix &g, int cols)
{
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), cols);
    const auto &r = qr.matrixQR();
    for (int j = 0; j < cols; ++j) {
        const std::complex<double> d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0)
            q.col(j) *= d / mag;
    }
    return q;
}

SpectrumSample classify(const Eigen::VectorXd &raw, double tol)
{
    SpectrumSample out;
    out.tol = tol;
    out.lambdas.reserve(static_cast<std::size_t>(raw.size()));
    for (Eigen::Index i = 0; i < raw.size(); ++i) {
        double v = raw(i);
        if (!std::isfinite(v))
            throw NumericalError("eigensolver returned a non-finite eigenvalue");
        if (v < -1e-10 || v > 1.0 + 1e-10)
            ++out.clamp_events;
        v = std::clamp(v, 0.0, 1.0);
        if (v >= 1.0 - tol) {
            v = 1.0;
            ++out.counts.n_unit;
        } else if (v <= tol) {
            v = 0.0;
            ++out.counts.n_zero;
        } else {
            ++out.counts.n_interior;
        }
        out.lambdas.push_back(v);
    }
    std::sort(out.lambdas.begin(), out.lambdas.end());
    return out;
}

void require_tol(double tol)
{
    if (!(tol > 0.0 && tol <= 1e-3))
        throw ContractViolation("classification tolerance must lie in (0, 1e-3]");
}

} // namespace

CMatrix ChannelRealization::h12() const
{
    if (!full)
        throw ContractViolation("h12 needs a realization drawn with keep_full");
    return full->block(0, dims.m_t(), dims.m_r(), dims.m() - dims.m_t());
}

CMatrix ChannelRealization::h21() const
{
    if (!full)
        throw ContractViolation("h21 needs a realization drawn with keep_full");
    return full->block(dims.m_r(), 0, dims.m() - dims.m_r(), dims.m_t());
}

CMatrix ChannelRealization::h22() const
{
    if (!full)
        throw ContractViolation("h22 needs a realization drawn with keep_full");
    return full->block(dims.m_r(), dims.m_t(), dims.m() - dims.m_r(), dims.m() - dims.m_t());
}

CMatrix sample_ginibre(int rows, int cols, Rng &rng)
{
    if (rows < 1 || cols < 1)
        throw ContractViolation("Ginibre dimensions must be positive");
    CMatrix g(rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i)
            g(i, j) = rng.complex_normal();
    return g;
}

CMatrix sample_haar_unitary(int m, Rng &rng)
{
    return haar_from_ginibre(sample_ginibre(m, m, rng), m);
}

CMatrix sample_haar_columns(int m, int cols, Rng &rng)
{
    if (cols < 1 || cols > m)
        throw ContractViolation("column count must lie in [1, m]");
    return haar_from_ginibre(sample_ginibre(m, cols, rng), cols);
}

ChannelRealization draw_channel(const ChannelDims &dims, Rng &rng, bool keep_full)
{
    if (keep_full) {
        CMatrix u = sample_haar_unitary(dims.m(), rng);
        CMatrix h11 = u.topLeftCorner(dims.m_r(), dims.m_t());
        return {dims, std::move(h11), std::move(u)};
    }
    CMatrix cols = sample_haar_columns(dims.m(), dims.m_t(), rng);
    return {dims, cols.topRows(dims.m_r()), std::nullopt};
}

Eigen::VectorXd hermitian_eigenvalues(const CMatrix &a)
{
    if (a.rows() == 0)
        return Eigen::VectorXd();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(a, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    Eigen::VectorXd ev = es.eigenvalues();
    if (!ev.allFinite())
        throw NumericalError("Hermitian eigensolver returned non-finite values");
    return ev;
}

SpectrumSample gram_spectrum(const CMatrix &h, double tol)
{
    require_tol(tol);
    const CMatrix gram = h.cols() <= h.rows() ? CMatrix(h.adjoint() * h) : CMatrix(h * h.adjoint());
    return classify(hermitian_eigenvalues(gram), tol);
}

SpectrumSample squared_singular_values(const ChannelRealization &real, double tol)
{
    return gram_spectrum(real.h11, tol);
}

SpectrumSample sample_jacobi_spectrum_wishart(int m1, int m2, int n, Rng &rng, int *singular_redraws)
{
    if (n < 0 || m1 < n || m2 < n)
        throw ContractViolation("Jacobi ensemble needs m1 >= n and m2 >= n");
    if (n == 0)
        return SpectrumSample{};

    for (;;) {
        const CMatrix g1 = sample_ginibre(m1, n, rng);
        const CMatrix g2 = sample_ginibre(m2, n, rng);
        const CMatrix a = g1.adjoint() * g1;
        const CMatrix s = a + g2.adjoint() * g2;

        Eigen::SelfAdjointEigenSolver<CMatrix> es(s);
        if (es.info() != Eigen::Success)
            throw NumericalError("eigensolver failed on A+B");
        const Eigen::VectorXd d = es.eigenvalues();
        if (!(d(0) > 1e-12 * d(n - 1))) {
            if (singular_redraws)
                ++*singular_redraws;
            continue;
        }
        const CMatrix &v = es.eigenvectors();
        const CMatrix inv_sqrt = v * d.cwiseInverse().cwiseSqrt().asDiagonal() * v.adjoint();
        CMatrix j = inv_sqrt * a * inv_sqrt;
        j = 0.5 * (j + j.adjoint()).eval();
        return classify(hermitian_eigenvalues(j), kUnitTol);
    }
}

Lemma1Report verify_lemma1(const ChannelRealization &real, double tol)
{
    require_tol(tol);
    const ChannelDims &dims = real.dims;
    if (dims.k() <= 0)
        throw ContractViolation("unit-eigenvalue check needs m_t + m_r > m, got dims " + dims.to_string());
    if (!real.has_full())
        throw ContractViolation("unit-eigenvalue check needs a realization drawn with keep_full");

    const Eigen::VectorXd ev11 = hermitian_eigenvalues(real.h11.adjoint() * real.h11);
    const CMatrix h22 = real.h22();

    Lemma1Report rep;
    rep.tol = tol;
    for (Eigen::Index i = 0; i < ev11.size(); ++i) {
        if (std::abs(ev11(i) - 1.0) <= tol)
            ++rep.n_unit_found;
        else if (std::abs(ev11(i)) <= tol)
            ++rep.n_zero_found;
    }

    // Sorted, the lowest m - m_r eigenvalues of H11'H11 are exactly those of H22 H22'
    // (zeros included); the top k are the unit ones.
    const int n22 = dims.m() - dims.m_r();
    if (n22 > 0) {
        const Eigen::VectorXd ev22 = hermitian_eigenvalues(h22 * h22.adjoint());
        for (int i = 0; i < n22; ++i)
            rep.residual_match_error = std::max(rep.residual_match_error, std::abs(ev11(i) - ev22(i)));
    }
    return rep;
}

} // namespace jmimo
