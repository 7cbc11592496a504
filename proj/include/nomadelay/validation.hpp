// SPDX-License-Identifier: Apache-2.0
//
// nomadelay: delay-violation analysis for the two-user uplink NOMA channel
// Copyright (C) 2026 The nomadelay authors
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
#include <string>
#include <vector>

#include "nomadelay/errors.hpp"

namespace nomadelay {
namespace validation {

/// One analytic-vs-exact comparison: the error probability of `user` under
/// `model` at the given estimate and rates.
struct EpsTuple {
    ErrorModel model;
    RatePair rates;
    SnrPair rho_hat;
    errors::ExactContext ctx;
    EstimatedState state;
    int user = 1;
};

struct EpsCheck {
    EpsTuple tuple;
    double analytic = 0.0;
    double oracle = 0.0;
    Interval ci;
};

std::string model_label(const ErrorModel& model);

struct TupleOptions {
    double snr_db_lo = 10.0;   // per-signal average SNR range (NOMA, after the split)
    double snr_db_hi = 30.0;
    int n_tr_lo = 25;
    int n_tr_hi = 50;
    int n_total = 250;
    double beta1 = 0.2;
    double eps_lo = 1e-3;      // oracle window of the retained tuples
    double eps_hi = 1e-1;
    std::uint64_t screen_samples = 100000;
    std::uint64_t oracle_samples = 10000000;
    int max_attempts = 200000;
};

/// Random tuples in the validity regime: average SNRs and training lengths
/// drawn uniformly, estimates from their exact law, imperfect-CSI models with
/// and without finite blocklength, rates as random fractions of the region
/// boundary at the estimate. Tuples are kept when a screening oracle and then
/// the full oracle fall inside [eps_lo, eps_hi].
std::vector<EpsCheck> sample_checks(int count, std::uint64_t seed, const TupleOptions& opts,
                                    unsigned threads = 0);

/// Analytic check of one tuple against a fresh oracle run.
EpsCheck check(const EpsTuple& tuple, std::uint64_t samples, std::uint64_t seed,
               unsigned threads = 0);

/// Largest rate of `user` whose error probability (analytic, or oracle with
/// common random numbers) does not exceed target; the other rate is fixed.
double analytic_rate_for_eps(const ErrorModel& model, RatePair rates, const EstimatedState& est,
                             int user, double target);
double oracle_rate_for_eps(const ErrorModel& model, RatePair rates, SnrPair rho_hat,
                           const errors::ExactContext& ctx, int user, double target,
                           std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

}  // namespace validation
}  // namespace nomadelay
