# SPDX-License-Identifier: Apache-2.0
#
# nomadelay: delay-violation analysis for the two-user uplink NOMA channel
# Copyright (C) 2026 The nomadelay authors
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
"""Python bindings of the nomadelay C++ core.

Experiment entry points take the INI text accepted by the command-line tool.
"""

from ._core import (  # noqa: F401
    Coding,
    CsiModel,
    DecodeOrder,
    Decoder,
    ErrorModel,
    EstimatedState,
    Infeasible,
    RatePair,
    bound,
    delay_bounds,
    dispersion_awgn,
    dispersion_iid,
    dispersion_mac,
    estimation_error_variance,
    evaluate_eps,
    make_state,
    max_arrival,
    optimize,
    oracle_eps,
    q_function,
    q_inverse,
    resolve_config,
    simulate,
    solve_knapsack,
    sweep,
    validate_eps,
)

__version__ = "0.1.0"
