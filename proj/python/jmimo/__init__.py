# SPDX-License-Identifier: Apache-2.0
#
# jacobi-mimo: truncated-unitary MIMO channel analysis library
# Copyright (C) 2026 The jacobi-mimo authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Truncated-unitary (Jacobi) MIMO channel analysis."""

from ._jmimo import (
    ChannelDims,
    ContractViolation,
    NumericalError,
    complete_unitary,
    dmt_curve,
    ergodic_capacity,
    estimate_diversity_slope,
    haar_unitary,
    jacobi_poly,
    mc_alamouti_outage,
    mc_ergodic_capacity,
    mc_outage,
    mc_repetition_error,
    outage_single_mode,
    reg_inc_beta,
    rho_norm,
    run_feedback_scheme,
    sample_spectrum,
)

__all__ = [
    "ChannelDims",
    "ContractViolation",
    "NumericalError",
    "complete_unitary",
    "dmt_curve",
    "ergodic_capacity",
    "estimate_diversity_slope",
    "haar_unitary",
    "jacobi_poly",
    "mc_alamouti_outage",
    "mc_ergodic_capacity",
    "mc_outage",
    "mc_repetition_error",
    "outage_single_mode",
    "reg_inc_beta",
    "rho_norm",
    "run_feedback_scheme",
    "sample_spectrum",
]
