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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "jmimo/dims.hpp"
#include "jmimo/ensembles.hpp"
#include "jmimo/errors.hpp"
#include "jmimo/rng.hpp"
#include "jmimo/stats.hpp"

using namespace jmimo;

namespace {

std::vector<double> pooled_spectra(const ChannelDims &dims, int draws, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> out;
    for (int i = 0; i < draws; ++i) {
        const SpectrumSample s = squared_singular_values(draw_channel(dims, rng));
        out.insert(out.end(), s.lambdas.begin(), s.lambdas.end());
    }
    return out;
}

double max_unitarity_error(const CMatrix &u)
{
    return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("channel dims validate bounds and derive constants")
{
    const ChannelDims d(3, 2, 4);
    CHECK(d.k() == 1);
    CHECK(d.m_min() == 2);
    CHECK(d.m_max() == 3);
    CHECK(d.alpha() == 1);
    CHECK(d.beta() == -1);
    CHECK_FALSE(d.unpinned());
    REQUIRE(d.residual().has_value());
    CHECK(*d.residual() == ChannelDims(2, 1, 4));
    CHECK(d.transposed() == ChannelDims(2, 3, 4));

    CHECK(ChannelDims(2, 2, 6).k() == 0);
    CHECK(ChannelDims(2, 2, 6).beta() == 2);
    CHECK_FALSE(ChannelDims(4, 3, 4).residual().has_value());

    CHECK_THROWS_AS(ChannelDims(0, 1, 1), ContractViolation);
    CHECK_THROWS_AS(ChannelDims(5, 1, 4), ContractViolation);
    CHECK_THROWS_AS(ChannelDims(1, 5, 4), ContractViolation);
    CHECK_THROWS_AS(ChannelDims(1, 1, 0), ContractViolation);
    CHECK_THROWS_WITH(ChannelDims(5, 1, 4), Catch::Matchers::ContainsSubstring("mt"));
}

TEST_CASE("eigenvalue count partition holds whenever k > 0")
{
    for (int m = 1; m <= 8; ++m)
        for (int mt = 1; mt <= m; ++mt)
            for (int mr = 1; mr <= m; ++mr) {
                const ChannelDims d(mt, mr, m);
                if (d.k() > 0)
                    CHECK(d.k() + (m - mr) == mt);
            }
}

TEST_CASE("rng streams are deterministic and keyed")
{
    Rng a = Rng::stream(7, stream_tag("x"), 3);
    Rng b = Rng::stream(7, stream_tag("x"), 3);
    Rng c = Rng::stream(7, stream_tag("x"), 4);
    Rng d = Rng::stream(8, stream_tag("x"), 3);
    const auto va = a();
    CHECK(va == b());
    CHECK(va != c());
    CHECK(va != d());
    Rng u(1);
    for (int i = 0; i < 1000; ++i) {
        const double x = u.uniform();
        REQUIRE(x > 0.0);
        REQUIRE(x < 1.0);
    }
}

TEST_CASE("ginibre entries are CN(0,1)")
{
    Rng rng(11);
    const int draws = 100000;
    double power = 0.0;
    Eigen::MatrixXcd cov = Eigen::MatrixXcd::Zero(6, 6);
    for (int i = 0; i < draws; ++i) {
        power += std::norm(sample_ginibre(1, 1, rng)(0, 0));
        const CMatrix g = sample_ginibre(3, 2, rng);
        const Eigen::VectorXcd v = g.reshaped();
        cov += v * v.adjoint();
    }
    CHECK(power / draws == Catch::Approx(1.0).margin(0.02));
    cov /= double(draws);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            if (i == j)
                CHECK(std::abs(cov(i, j) - 1.0) < 0.02);
            else
                CHECK(std::abs(cov(i, j)) < 0.02);
        }

    Rng r1(5);
    Rng r2(5);
    CHECK(sample_ginibre(3, 2, r1) == sample_ginibre(3, 2, r2));
}

TEST_CASE("haar unitaries are unitary and exchangeable")
{
    Rng rng(3);
    const CMatrix u1 = sample_haar_unitary(1, rng);
    CHECK(std::abs(std::abs(u1(0, 0)) - 1.0) < 1e-12);

    const CMatrix u8 = sample_haar_unitary(8, rng);
    CHECK(max_unitarity_error(u8) < 1e-12);
    Eigen::ComplexEigenSolver<CMatrix> es(u8);
    for (Eigen::Index i = 0; i < 8; ++i)
        CHECK(std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < 1e-10);

    Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(4, 4);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        mean += sample_haar_unitary(4, rng).cwiseAbs2();
    mean /= double(draws);
    CHECK((mean.array() - 0.25).abs().maxCoeff() < 0.01);
}

TEST_CASE("leading haar columns match the full draw")
{
    for (int seed = 0; seed < 20; ++seed) {
        Rng a(seed);
        Rng b(seed);
        const CMatrix full = sample_haar_unitary(6, a);
        const CMatrix cols = sample_haar_columns(6, 2, b);
        CHECK((full.leftCols(2) - cols).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("haar distribution is invariant under a fixed rotation")
{
    Rng rv(99);
    const CMatrix v = sample_haar_unitary(4, rv);
    Rng r1(1);
    Rng r2(2);
    std::vector<double> plain;
    std::vector<double> rotated;
    for (int i = 0; i < 100000; ++i) {
        const CMatrix a = sample_haar_unitary(4, r1);
        const CMatrix b = v * sample_haar_unitary(4, r2);
        for (double l : gram_spectrum(a.topLeftCorner(2, 2)).lambdas)
            plain.push_back(l);
        for (double l : gram_spectrum(b.topLeftCorner(2, 2)).lambdas)
            rotated.push_back(l);
    }
    CHECK(ks_two_sample(plain, rotated) < 0.01);
}

TEST_CASE("draw_channel blocks and spectra")
{
    Rng rng(21);
    SECTION("full truncation is unitary")
    {
        const SpectrumSample s = squared_singular_values(draw_channel(ChannelDims(3, 3, 3), rng));
        for (double l : s.lambdas)
            CHECK(l == 1.0);
        CHECK(s.counts.n_unit == 3);
    }
    SECTION("(2,2,3) has exactly one unit value")
    {
        for (int i = 0; i < 200; ++i) {
            const SpectrumSample s = squared_singular_values(draw_channel(ChannelDims(2, 2, 3), rng));
            REQUIRE(s.counts.n_unit == 1);
            REQUIRE(s.lambdas.back() == 1.0);
            REQUIRE(s.lambdas.front() < 1.0);
        }
    }
    SECTION("full realization is unitary and blocks have the right shapes")
    {
        const ChannelRealization r = draw_channel(ChannelDims(3, 2, 5), rng, true);
        REQUIRE(r.has_full());
        CHECK(max_unitarity_error(*r.full) < 1e-12);
        CHECK(r.h12().rows() == 2);
        CHECK(r.h12().cols() == 2);
        CHECK(r.h21().rows() == 3);
        CHECK(r.h21().cols() == 3);
        CHECK(r.h22().rows() == 3);
        CHECK(r.h22().cols() == 2);
        CHECK((r.full->topLeftCorner(2, 3) - r.h11).cwiseAbs().maxCoeff() == 0.0);
        const ChannelRealization thin = draw_channel(ChannelDims(3, 2, 5), rng);
        CHECK_THROWS_AS(thin.h21(), ContractViolation);
    }
    SECTION("thin and full draws give the same H11")
    {
        Rng a(4);
        Rng b(4);
        const ChannelDims d(2, 3, 7);
        CHECK((draw_channel(d, a).h11 - draw_channel(d, b, true).h11).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("mean Frobenius energy of (2,2,4) is 1")
    {
        double sum = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i)
            sum += draw_channel(ChannelDims(2, 2, 4), rng).h11.squaredNorm();
        CHECK(sum / draws == Catch::Approx(1.0).margin(0.01));
    }
    SECTION("bad tolerance is rejected")
    {
        const ChannelRealization r = draw_channel(ChannelDims(2, 2, 4), rng);
        CHECK_THROWS_AS(squared_singular_values(r, 0.0), ContractViolation);
        CHECK_THROWS_AS(squared_singular_values(r, 1e-2), ContractViolation);
    }
}

TEST_CASE("(1,2,4) spectrum follows Beta(2,2)")
{
    const std::vector<double> xs = pooled_spectra(ChannelDims(1, 2, 4), 100000, 5);
    const double d = ks_one_sample(xs, [](double x) { return x * x * (3.0 - 2.0 * x); });
    CHECK(d < 0.01);
}

TEST_CASE("spectrum is symmetric in m_t and m_r")
{
    const auto a = pooled_spectra(ChannelDims(3, 2, 4), 100000, 6);
    const auto b = pooled_spectra(ChannelDims(2, 3, 4), 100000, 7);
    CHECK(ks_two_sample(a, b) < 0.01);
}

TEST_CASE("wishart-constructed jacobi spectra")
{
    Rng rng(8);
    SECTION("J(1,1,1) is uniform")
    {
        double sum = 0.0;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i)
            sum += sample_jacobi_spectrum_wishart(1, 1, 1, rng).lambdas.at(0);
        CHECK(sum / draws == Catch::Approx(0.5).margin(0.005));
    }
    SECTION("n = 0 gives an empty spectrum")
    {
        CHECK(sample_jacobi_spectrum_wishart(2, 2, 0, rng).lambdas.empty());
    }
    SECTION("matches truncated haar for (2,2,4)")
    {
        std::vector<double> w;
        int redraws = 0;
        for (int i = 0; i < 100000; ++i)
            for (double l : sample_jacobi_spectrum_wishart(2, 2, 2, rng, &redraws).lambdas)
                w.push_back(l);
        const auto h = pooled_spectra(ChannelDims(2, 2, 4), 100000, 9);
        CHECK(ks_two_sample(w, h) < 0.01);
        CHECK(redraws == 0);
    }
    SECTION("bad shapes are rejected")
    {
        CHECK_THROWS_AS(sample_jacobi_spectrum_wishart(1, 3, 2, rng), ContractViolation);
    }
}

TEST_CASE("unit eigenvalues and the H22 match hold per draw")
{
    Rng rng(10);
    struct Case {
        ChannelDims dims;
        int units;
        int zeros;
    };
    const std::vector<Case> cases = {
        {ChannelDims(2, 2, 3), 1, 0}, {ChannelDims(3, 3, 4), 2, 0}, {ChannelDims(4, 3, 4), 3, 1}};
    for (const Case &c : cases) {
        for (int i = 0; i < 500; ++i) {
            const Lemma1Report rep = verify_lemma1(draw_channel(c.dims, rng, true));
            REQUIRE(rep.n_unit_found >= c.units);
            REQUIRE(rep.n_zero_found >= c.zeros);
            REQUIRE(rep.residual_match_error < 1e-9);
        }
    }
    CHECK_THROWS_AS(verify_lemma1(draw_channel(ChannelDims(2, 2, 4), rng, true)), ContractViolation);
    CHECK_THROWS_AS(verify_lemma1(draw_channel(ChannelDims(2, 2, 3), rng, false)), ContractViolation);
}

TEST_CASE("hermitian eigenvalues are ascending")
{
    CMatrix a(2, 2);
    a << 2.0, std::complex<double>(0.0, 1.0), std::complex<double>(0.0, -1.0), 2.0;
    const Eigen::VectorXd ev = hermitian_eigenvalues(a);
    CHECK(ev(0) == Catch::Approx(1.0));
    CHECK(ev(1) == Catch::Approx(3.0));
}
