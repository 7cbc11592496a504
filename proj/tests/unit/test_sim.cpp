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

#include "catch_amalgamated.hpp"

#include <cmath>

#include "nomadelay/sim.hpp"

using namespace nomadelay;
using Catch::Approx;

namespace {
SimOptions quick(std::uint64_t slots, Fidelity f = Fidelity::Exact) {
    SimOptions o;
    o.fidelity = f;
    o.slots = slots;
    o.seed = 7;
    o.threads = 1;
    o.w_max = 8;
    o.replications = 4;
    return o;
}

struct Small {
    ScenarioConfig sc;
    SnrGrid grid;
    RatePolicy policy;
    Small() {
        sc.snr = AvgSnrConfig::from_db(30.0, 15.0, 0.2);
        grid = csi::build_grid(sc, 6);
        ErrorModel m;
        alloc::GridSearchOptions o;
        o.rate_candidates = 16;
        policy = alloc::optimize_grid(m, grid, sc.n_data(), 0.01, 0.01, 1.0, o);
    }
};
}  // namespace

TEST_CASE("lossless service that covers the arrivals leaves no delay") {
    const UserReport r = sim::simulate_constant(300.0, 320.0, 0.0, quick(20000));
    CHECK(r.delay_hist[0] == r.batches);
    CHECK(r.batches > 0);
    for (int w = 0; w <= 8; ++w) CHECK(r.pv[static_cast<std::size_t>(w)] == 0.0);
}

TEST_CASE("service slightly below the arrivals builds a backlog") {
    // 300 bits arrive and 290 leave per slot: a batch waits once the backlog
    // exceeds 290 - 10 k bits, which happens periodically.
    const UserReport r = sim::simulate_constant(300.0, 600.0, 0.0, quick(20000));
    CHECK(r.delay_hist[0] == r.batches);
    const UserReport h = sim::simulate_constant(300.0, 290.0, 0.0, quick(20000));
    CHECK(h.saturated == false);
    CHECK(h.pv[5] == 1.0);
}

TEST_CASE("service that never succeeds violates every deadline") {
    SimOptions o = quick(20000);
    o.burn_in = 0;
    const UserReport r = sim::simulate_constant(100.0, 500.0, 1.0, o);
    CHECK(r.batches == 0);
    // only the last w slots of each replication can be within deadline
    for (int w = 1; w <= 8; ++w) CHECK(r.pv[static_cast<std::size_t>(w)] >= 1.0 - 4.0 * w / 20000.0);
}

TEST_CASE("a success that clears the queue gives geometric delays") {
    // Each batch leaves at the first successful slot from its arrival on, so
    // P(delay > w) = eps^(w + 1). Batches of one backlog share their fate,
    // so the check uses a relative tolerance instead of the binomial CI.
    const double eps = 0.3;
    const UserReport r = sim::simulate_constant(50.0, 1e9, eps, quick(1000000));
    for (int w = 0; w <= 5; ++w) {
        const auto k = static_cast<std::size_t>(w);
        CHECK(r.pv[k] == Approx(std::pow(eps, w + 1)).epsilon(0.03 + 0.02 * w));
    }
}

TEST_CASE("violation probabilities are nonincreasing in the deadline") {
    const UserReport r = sim::simulate_constant(280.0, 600.0, 0.4, quick(200000));
    REQUIRE(r.pv[1] > 0.0);
    for (std::size_t w = 1; w < r.pv.size(); ++w) CHECK(r.pv[w] <= r.pv[w - 1]);
}

TEST_CASE("results depend on the seed and replications, not on threads") {
    Small s;
    SimOptions a = quick(30000);
    SimOptions b = a;
    b.threads = 3;
    const SimReport ra = sim::simulate(s.grid, s.policy, {300.0}, {200.0}, a);
    const SimReport rb = sim::simulate(s.grid, s.policy, {300.0}, {200.0}, b);
    for (int u = 0; u < 2; ++u) {
        CHECK(ra.user[u].delay_hist == rb.user[u].delay_hist);
        CHECK(ra.user[u].censored_hist == rb.user[u].censored_hist);
    }
    SimOptions c = a;
    c.seed = 8;
    const SimReport rc = sim::simulate(s.grid, s.policy, {300.0}, {200.0}, c);
    CHECK(rc.user[0].delay_hist != ra.user[0].delay_hist);
}

TEST_CASE("the approximate fidelity is close to and above the exact one") {
    // Analytic error probabilities lean conservative, so Bernoulli decoding
    // with them fails at least as often as the exact model.
    Small s;
    const ArrivalSpec a1{250.0}, a2{150.0};
    const SimReport ex = sim::simulate(s.grid, s.policy, a1, a2, quick(200000, Fidelity::Exact));
    const SimReport ap = sim::simulate(s.grid, s.policy, a1, a2, quick(200000, Fidelity::Approximate));
    for (int u = 0; u < 2; ++u) {
        const double pe = ex.user[u].pv[0], pa = ap.user[u].pv[0];
        INFO("user " << u + 1 << " exact " << pe << " approx " << pa);
        REQUIRE(pe > 1e-3);
        CHECK(pa >= 0.8 * pe);
        CHECK(pa <= 3.0 * pe);
        CHECK_FALSE(ex.user[u].saturated);
    }
}

TEST_CASE("simulated violations stay below the network-calculus bound") {
    Small s;
    const ArrivalSpec a1{380.0}, a2{300.0};
    const SimReport ex = sim::simulate(s.grid, s.policy, a1, a2, quick(200000, Fidelity::Exact));
    for (int u = 1; u <= 2; ++u) {
        const ServiceSpec sv = alloc::service_spec(s.grid, s.policy, u);
        const auto bounds = snc::delay_bounds(u == 1 ? a1 : a2, sv, 8);
        const sim::Dominance d = sim::compare(ex.user[u - 1], bounds);
        for (const auto& row : d.rows)
            INFO("w " << row.w << " pv " << row.pv << " bound " << row.bound);
        CHECK(d.dominated);
        CHECK(d.rows.size() == 8);
        REQUIRE(ex.user[u - 1].pv[2] > 0.0);
        CHECK(d.slope_sim < 0.0);
        CHECK(d.slope_bound < 0.0);
    }
}

TEST_CASE("compare verdicts") {
    const UserReport r = sim::simulate_constant(50.0, 1e9, 0.3, quick(100000));
    std::vector<DelayBound> ones, tiny;
    for (int w = 1; w <= 5; ++w) {
        ones.push_back({w, 1.0, 0.1, true});
        tiny.push_back({w, 1e-9, 0.1, true});
    }
    const sim::Dominance pass = sim::compare(r, ones);
    CHECK(pass.dominated);
    for (const auto& row : pass.rows) CHECK(row.verdict == sim::Verdict::Pass);
    const sim::Dominance fail = sim::compare(r, tiny);
    CHECK_FALSE(fail.dominated);
    for (const auto& row : fail.rows) CHECK(row.verdict == sim::Verdict::Fail);
}

TEST_CASE("an overloaded queue is flagged as saturated") {
    SimOptions o = quick(50000);
    o.max_backlog = 1000;
    const UserReport r = sim::simulate_constant(400.0, 300.0, 0.0, o);
    CHECK(r.saturated);
}
