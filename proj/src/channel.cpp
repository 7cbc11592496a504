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

#include "nomadelay/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nomadelay {

const char* to_string(DecodeOrder order) {
    switch (order) {
        case DecodeOrder::User1First:
            return "user1_first";
        case DecodeOrder::User2First:
            return "user2_first";
        case DecodeOrder::Joint:
            return "joint";
    }
    return "?";
}

AvgSnrConfig AvgSnrConfig::from_db(double rho_oma1_db, double rho_oma2_db, double beta1) {
    AvgSnrConfig cfg;
    cfg.rho_oma1 = nomadelay::from_db(rho_oma1_db);
    cfg.rho_oma2 = nomadelay::from_db(rho_oma2_db);
    cfg.beta1 = beta1;
    cfg.beta2 = 1.0 - beta1;
    return cfg;
}

void AvgSnrConfig::validate() const {
    if (!(rho_oma1 > 0.0) || !(rho_oma2 > 0.0) || !std::isfinite(rho_oma1) ||
        !std::isfinite(rho_oma2))
        throw std::invalid_argument("average SNRs must be positive and finite");
    if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
        throw std::invalid_argument("power-split fractions must lie in (0, 1)");
    if (std::abs(beta1 + beta2 - 1.0) > 1e-12)
        throw std::invalid_argument("power-split fractions must sum to 1, got " +
                                    std::to_string(beta1 + beta2));
}

namespace channel {

namespace {
// Rates produced by floating-point arithmetic on the region boundary (e.g.
// r2 = R_sum - r1) may overshoot by a few ulps; they still count as inside.
bool fits(double rate, double limit) { return rate <= limit + 1e-12 * (1.0 + std::abs(limit)); }
}  // namespace

double r_min(double gamma, double gamma_interferer) {
    return std::log2(1.0 + gamma / (gamma_interferer + 1.0));
}

double r_max(double gamma) { return std::log2(1.0 + gamma); }

double r_sum(SnrPair pair) { return std::log2(1.0 + pair.gamma1 + pair.gamma2); }

Corners corner_points(SnrPair pair) {
    Corners c;
    c.a = {r_max(pair.gamma1), r_min(pair.gamma2, pair.gamma1), DecodeOrder::User2First};
    c.b = {r_min(pair.gamma1, pair.gamma2), r_max(pair.gamma2), DecodeOrder::User1First};
    return c;
}

bool in_region(const RatePair& rates, SnrPair pair) {
    return fits(rates.r1, r_max(pair.gamma1)) && fits(rates.r2, r_max(pair.gamma2)) &&
           fits(rates.r1 + rates.r2, r_sum(pair));
}

Decoded sic_decode(const RatePair& rates, SnrPair pair) {
    Decoded d;
    switch (rates.order) {
        case DecodeOrder::User1First:
            d.user1 = fits(rates.r1, r_min(pair.gamma1, pair.gamma2));
            d.user2 = d.user1 && fits(rates.r2, r_max(pair.gamma2));
            break;
        case DecodeOrder::User2First:
            d.user2 = fits(rates.r2, r_min(pair.gamma2, pair.gamma1));
            d.user1 = d.user2 && fits(rates.r1, r_max(pair.gamma1));
            break;
        case DecodeOrder::Joint:
            d.user1 = d.user2 = in_region(rates, pair);
            break;
    }
    return d;
}

double sample_snr(double rho_bar, Rng& rng) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    const double re = normal(rng);
    const double im = normal(rng);
    return rho_bar * (re * re + im * im);
}

}  // namespace channel
}  // namespace nomadelay
