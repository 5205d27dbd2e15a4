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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jmimo/analytic.hpp"
#include "jmimo/ensembles.hpp"
#include "jmimo/errors.hpp"
#include "jmimo/feedback.hpp"
#include "jmimo/simulate.hpp"
#include "jmimo/specfun.hpp"

namespace py = pybind11;
using namespace jmimo;

namespace {

McConfig make_config(std::int64_t trials, std::uint64_t seed, int workers)
{
    return {trials, seed, workers};
}

py::dict estimate_dict(const McEstimate &e)
{
    py::dict d;
    d["value"] = e.value;
    d["stderr"] = e.std_error;
    d["trials"] = e.trials;
    d["seed"] = e.seed;
    return d;
}

} // namespace

PYBIND11_MODULE(_jmimo, m)
{
    m.doc() = "Truncated-unitary (Jacobi) MIMO channel analysis";

    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<ChannelDims>(m, "ChannelDims")
        .def(py::init<int, int, int>(), py::arg("m_t"), py::arg("m_r"), py::arg("m"))
        .def_property_readonly("m_t", &ChannelDims::m_t)
        .def_property_readonly("m_r", &ChannelDims::m_r)
        .def_property_readonly("m", &ChannelDims::m)
        .def_property_readonly("k", &ChannelDims::k)
        .def("__repr__", [](const ChannelDims &d) { return "ChannelDims" + d.to_string(); });

    m.def(
        "ergodic_capacity", [](int mt, int mr, int mm, double rho) { return ergodic_capacity(ChannelDims(mt, mr, mm), rho); },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("rho"), "Ergodic capacity in bits; rho linear.");
    m.def("outage_single_mode", &outage_single_mode, py::arg("m_r"), py::arg("m"), py::arg("rate_bits"),
          py::arg("rho"));
    m.def("rho_norm", &rho_norm, py::arg("m_r"), py::arg("m"), py::arg("epsilon"), "rho_norm, linear.");
    m.def(
        "dmt_curve",
        [](int mt, int mr, int mm) {
            const DmtCurve c = dmt_optimal_curve(ChannelDims(mt, mr, mm));
            std::vector<std::pair<double, double>> v;
            for (const DmtVertex &x : c.vertices)
                v.emplace_back(x.r, x.d);
            return py::make_tuple(v, c.infinite_below);
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), "Returns (vertices, infinite_below).");
    m.def("jacobi_poly", &jacobi_poly, py::arg("k"), py::arg("alpha"), py::arg("beta"), py::arg("x"));
    m.def("reg_inc_beta", &reg_inc_beta, py::arg("x"), py::arg("a"), py::arg("b"));

    m.def(
        "sample_spectrum",
        [](int mt, int mr, int mm, std::uint64_t seed, std::int64_t index) {
            Rng rng = Rng::stream(seed, stream_tag("python-spectrum"), static_cast<std::uint64_t>(index));
            return squared_singular_values(draw_channel(ChannelDims(mt, mr, mm), rng)).lambdas;
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("seed") = 0, py::arg("index") = 0,
        "Ascending squared singular values of one truncated-Haar draw.");
    m.def(
        "haar_unitary",
        [](int mm, std::uint64_t seed) {
            Rng rng(seed);
            return sample_haar_unitary(mm, rng);
        },
        py::arg("m"), py::arg("seed") = 0);
    m.def(
        "complete_unitary", [](const CMatrix &h11, int mt, int mr, int mm) { return complete_unitary(h11, ChannelDims(mt, mr, mm)); },
        py::arg("h11"), py::arg("m_t"), py::arg("m_r"), py::arg("m"));

    m.def(
        "mc_ergodic_capacity",
        [](int mt, int mr, int mm, double rho, std::int64_t trials, std::uint64_t seed, int workers) {
            const ChannelDims dims(mt, mr, mm);
            const McConfig cfg = make_config(trials, seed, workers);
            McEstimate e;
            {
                py::gil_scoped_release release;
                e = mc_ergodic_capacity(dims, rho, cfg);
            }
            return estimate_dict(e);
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("rho"), py::arg("trials") = 10000, py::arg("seed") = 0,
        py::arg("workers") = 1);
    m.def(
        "mc_outage",
        [](int mt, int mr, int mm, double rho, double r, std::int64_t trials, std::uint64_t seed, int workers) {
            return estimate_dict(mc_outage(ChannelDims(mt, mr, mm), rho, r, make_config(trials, seed, workers)));
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("rho"), py::arg("r"), py::arg("trials") = 10000,
        py::arg("seed") = 0, py::arg("workers") = 1);
    m.def(
        "mc_repetition_error",
        [](int mt, int mr, int mm, double rho, std::int64_t trials, std::uint64_t seed, const std::string &estimator) {
            RepetitionMode mode = RepetitionMode::gain_quadrature;
            if (estimator == "symbol")
                mode = RepetitionMode::symbol;
            else if (estimator == "spectrum")
                mode = RepetitionMode::spectrum_average;
            else if (estimator != "gain")
                throw ContractViolation("estimator must be symbol, spectrum or gain");
            return estimate_dict(mc_repetition_error(ChannelDims(mt, mr, mm), rho, make_config(trials, seed, 1), mode));
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("rho"), py::arg("trials") = 10000, py::arg("seed") = 0,
        py::arg("estimator") = "gain");
    m.def(
        "mc_alamouti_outage",
        [](int mm, double rho, double r, std::int64_t trials, std::uint64_t seed, bool conditional) {
            return estimate_dict(mc_alamouti_outage(mm, rho, r, make_config(trials, seed, 1),
                                                    conditional ? AlamoutiMode::gain_conditional : AlamoutiMode::indicator));
        },
        py::arg("m"), py::arg("rho"), py::arg("r"), py::arg("trials") = 10000, py::arg("seed") = 0,
        py::arg("conditional") = false);
    m.def("estimate_diversity_slope", &estimate_diversity_slope, py::arg("points"));

    m.def(
        "run_feedback_scheme",
        [](int mt, int mr, int mm, int n, int delay, double rho, const std::string &modulation, std::uint64_t seed,
           int frames, bool literal) {
            SchemeConfig cfg;
            cfg.dims = ChannelDims(mt, mr, mm);
            cfg.n = n;
            cfg.delay_l = delay;
            cfg.rho = rho;
            if (modulation != "qpsk" && modulation != "gaussian")
                throw ContractViolation("modulation must be qpsk or gaussian");
            cfg.modulation = modulation == "gaussian" ? Modulation::gaussian : Modulation::qpsk;
            cfg.seed = seed;
            cfg.frames = frames;
            cfg.equalize_relay_power = !literal;
            cfg.whiten_side_info = !literal;
            const SchemeReport r = run_feedback_scheme(cfg);
            py::dict d;
            d["per_stream_snr"] = r.per_stream_snr;
            d["noise_cov_error"] = r.noise_cov_error;
            d["achieved_rate"] = r.achieved_rate;
            d["ber"] = r.ber ? py::cast(*r.ber) : py::none();
            d["overhead_uses"] = r.overhead_uses;
            d["mode_power"] = r.mode_power;
            d["first_use_relay_power"] = r.first_use_relay_power;
            d["frame_mutual_information"] = r.frame_mutual_information;
            d["max_combining_error"] = r.max_combining_error;
            return d;
        },
        py::arg("m_t"), py::arg("m_r"), py::arg("m"), py::arg("n") = 1000, py::arg("delay") = 1, py::arg("rho") = 10.0,
        py::arg("modulation") = "qpsk", py::arg("seed") = 0, py::arg("frames") = 1, py::arg("literal") = false);
}
