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

#include <utility>

#include "nomadelay/common.hpp"

namespace nomadelay {

/// Which codeword the receiver decodes first. Joint means both codewords are
/// decoded together (any point of the capacity region is admissible).
enum class DecodeOrder { User1First, User2First, Joint };

const char* to_string(DecodeOrder order);

/// Instantaneous (or estimated) receive SNRs, linear scale.
struct SnrPair {
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

/// Coding rates in bits per channel use and the decoding order they assume.
struct RatePair {
    double r1 = 0.0;
    double r2 = 0.0;
    DecodeOrder order = DecodeOrder::Joint;
};

/// Average SNRs of the two users and the NOMA power split.
///
/// rho_oma_k is the average SNR of user k when it transmits alone with the
/// full power budget; under NOMA both users transmit simultaneously and the
/// budget is split by beta_k, giving rho_bar_k = beta_k * rho_oma_k.
struct AvgSnrConfig {
    double rho_oma1 = 1000.0;
    double rho_oma2 = 31.622776601683793;
    double beta1 = 0.2;
    double beta2 = 0.8;

    static AvgSnrConfig from_db(double rho_oma1_db, double rho_oma2_db, double beta1);

    double rho_bar1() const { return beta1 * rho_oma1; }
    double rho_bar2() const { return beta2 * rho_oma2; }
    double rho_bar(int user) const { return user == 1 ? rho_bar1() : rho_bar2(); }
    double rho_oma(int user) const { return user == 1 ? rho_oma1 : rho_oma2; }

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

namespace channel {

/// Rate of a user decoded while the other user's signal is still present.
double r_min(double gamma, double gamma_interferer);

/// Interference-free rate log2(1 + gamma).
double r_max(double gamma);

/// Sum-rate limit of the two-user MAC.
double r_sum(SnrPair pair);

/// SIC corner points: A decodes user 2 first (user 1 gets its interference-free
/// rate), B decodes user 1 first.
struct Corners {
    RatePair a;
    RatePair b;
};
Corners corner_points(SnrPair pair);

/// Capacity-region membership; rates on the boundary count as decodable.
bool in_region(const RatePair& rates, SnrPair pair);

/// Per-user decoding success of a SIC receiver for the given order. The user
/// decoded last only succeeds if the first codeword was removed.
struct Decoded {
    bool user1 = false;
    bool user2 = false;
};
Decoded sic_decode(const RatePair& rates, SnrPair pair);

/// Draws rho_bar * |h|^2 with h ~ CN(0, 1).
double sample_snr(double rho_bar, Rng& rng);

}  // namespace channel
}  // namespace nomadelay
