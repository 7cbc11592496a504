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

#include <vector>

#include "nomadelay/common.hpp"

namespace nomadelay {

/// Constant per-slot arrivals in bits.
struct ArrivalSpec {
    double alpha = 0.0;

    void validate() const;
};

/// One atom of a user's per-slot service law: with probability `mass` the
/// slot offers `bits`, which are lost with probability `eps`.
struct ServiceAtom {
    double mass = 0.0;
    double bits = 0.0;
    double eps = 0.0;
};

/// Discrete per-slot service law of one user.
struct ServiceSpec {
    std::vector<ServiceAtom> atoms;

    /// Largest number of bits any slot can offer.
    double max_bits() const;
    void validate() const;
};

struct DelayBound {
    int w = 0;
    double bound = 1.0;
    double s_opt = 0.0;
    bool stable = false;
};

namespace snc {

/// M_A(1 + s) = exp(s * alpha); s in 1/bit.
double mellin_arrival(const ArrivalSpec& arrival, double s);

/// M_S(1 - s) = sum_i p_i (eps_i + (1 - eps_i) exp(-s * bits_i)).
double mellin_service(const ServiceSpec& service, double s);

bool stability(double ma, double ms);

/// ms^w / (1 - ma ms); throws Unstable when ma ms >= 1.
double kernel(double ma, double ms, int w);

/// Search range of the SNC parameter s (1/bit) and the coarse sweep size.
struct SearchOptions {
    double s_min = 1e-5;
    double s_max = 10.0;
    int coarse_points = 40;
    int golden_iterations = 60;
};

/// Infimum over s of the kernel. Throws Unstable when no sampled s is stable.
DelayBound delay_bound(const ArrivalSpec& arrival, const ServiceSpec& service, int w,
                       const SearchOptions& opts = {});

/// Delay bounds for w = 1..w_max, each with its own optimal s.
std::vector<DelayBound> delay_bounds(const ArrivalSpec& arrival, const ServiceSpec& service,
                                     int w_max, const SearchOptions& opts = {});

/// Largest alpha for which the kernel at this s meets target_pv:
/// ln((1 - ms^w / target) / ms) / s, or a negative value if none does.
double max_arrival_at(double ms, double s, int w, double target_pv);

/// Largest alpha (bits/slot, rounded down to 0.1 bit) with
/// delay_bound(alpha, w) <= target_pv; 0 when no positive alpha qualifies.
double max_arrival(const ServiceSpec& service, int w, double target_pv,
                   const SearchOptions& opts = {});

/// Largest per-s Mellin value of the service for which the kernel with the
/// given arrival meets target_pv; >= 1 means any service qualifies.
double max_service_mellin(double ma, int w, double target_pv);

}  // namespace snc
}  // namespace nomadelay
