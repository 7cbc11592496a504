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
#include <vector>

#include "nomadelay/alloc.hpp"

namespace nomadelay {

/// Exact: estimate cell drawn by mass, true SNR from the exact law given that
/// estimate, decoding by region membership or blocklength-equivalent
/// capacities. ExactNearest: (estimate, SNR) drawn jointly from the exact
/// model, rates looked up at the nearest grid point. Approximate: Bernoulli
/// decoding with the policy's analytic error probabilities.
enum class Fidelity { Exact, ExactNearest, Approximate };

const char* to_string(Fidelity fidelity);

struct SimOptions {
    Fidelity fidelity = Fidelity::Exact;
    std::uint64_t slots = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::uint64_t burn_in = 1000;
    int w_max = 20;
    /// Independent replications; results depend on this, not on threads.
    int replications = 16;
    /// A replication stops and is flagged saturated beyond this many queued batches.
    std::size_t max_backlog = 1u << 20;
};

/// Delay statistics of one user's queue. delay_hist[d] counts batches that
/// fully departed d slots after arriving (last bin: d >= size - 1).
/// censored_hist[d] counts batches still queued at the end whose delay is
/// known to be at least d.
struct UserReport {
    std::vector<std::uint64_t> delay_hist;
    std::vector<std::uint64_t> censored_hist;
    std::uint64_t batches = 0;
    std::vector<double> pv;  // index w = 0..w_max
    std::vector<Interval> ci;
    std::vector<std::uint64_t> trials;
    bool saturated = false;
};

struct SimReport {
    UserReport user[2];
    std::uint64_t slots = 0;
    std::uint64_t seed = 0;
    Fidelity fidelity = Fidelity::Exact;
    int w_max = 0;
};

namespace sim {

/// Queues of both users under the policy: each slot first enqueues its
/// arrivals and then serves FIFO (no service on decoding failure). The delay
/// of a batch is its departure slot minus its arrival slot, 0 when it leaves
/// in the slot it arrived.
SimReport simulate(const SnrGrid& grid, const RatePolicy& policy, const ArrivalSpec& arrival1,
                   const ArrivalSpec& arrival2, const SimOptions& opts);

/// Single queue with a constant per-slot offer of `bits` lost with
/// probability eps; used for hand-checkable cases.
UserReport simulate_constant(double alpha, double bits, double eps, const SimOptions& opts);

enum class Verdict { Pass, Inconclusive, Fail };

const char* to_string(Verdict verdict);

struct CompareRow {
    int w = 0;
    double pv = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double bound = 1.0;
    Verdict verdict = Verdict::Pass;
};

/// Per-w dominance: Pass when the upper CI edge is at most the bound, Fail
/// when the point estimate exceeds it, Inconclusive in between. Slopes are
/// least-squares fits of log10 p_v against w over the w with p_v > 0.
struct Dominance {
    std::vector<CompareRow> rows;
    bool dominated = true;
    double slope_sim = 0.0;
    double slope_bound = 0.0;
};

Dominance compare(const UserReport& report, const std::vector<DelayBound>& bounds);

}  // namespace sim
}  // namespace nomadelay
