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

#include "nomadelay/channel.hpp"

using namespace nomadelay;
using Catch::Approx;

TEST_CASE("rate limits of the two-user MAC") {
    CHECK(channel::r_max(1.0) == Approx(1.0));
    CHECK(channel::r_max(0.0) == 0.0);
    CHECK(channel::r_min(3.0, 2.0) == Approx(1.0));
    CHECK(channel::r_sum({1.0, 2.0}) == Approx(2.0));
}

TEST_CASE("corner points sum to the sum rate") {
    const SnrPair g{100.0, 5.0};
    const auto c = channel::corner_points(g);
    CHECK(c.a.r1 + c.a.r2 == Approx(channel::r_sum(g)).epsilon(1e-13));
    CHECK(c.b.r1 + c.b.r2 == Approx(channel::r_sum(g)).epsilon(1e-13));
    CHECK(c.a.order == DecodeOrder::User2First);
    CHECK(c.b.order == DecodeOrder::User1First);
    CHECK(c.a.r1 == Approx(std::log2(101.0)));
    CHECK(c.b.r2 == Approx(std::log2(6.0)));
}

TEST_CASE("region membership counts the boundary as decodable") {
    const SnrPair g{3.0, 1.0};
    const double rs = channel::r_sum(g);
    CHECK(channel::in_region({2.0, rs - 2.0, DecodeOrder::Joint}, g));
    CHECK_FALSE(channel::in_region({2.0, rs - 1.99, DecodeOrder::Joint}, g));
    CHECK_FALSE(channel::in_region({2.01, 0.0, DecodeOrder::Joint}, g));
    const auto c = channel::corner_points(g);
    const auto da = channel::sic_decode(c.a, g);
    const auto db = channel::sic_decode(c.b, g);
    CHECK((da.user1 && da.user2));
    CHECK((db.user1 && db.user2));
}

TEST_CASE("SIC: the last user fails with the first") {
    const SnrPair g{3.0, 1.0};
    // user 1 first at a rate above its interfered limit
    const auto d = channel::sic_decode({1.5, 0.1, DecodeOrder::User1First}, g);
    CHECK_FALSE(d.user1);
    CHECK_FALSE(d.user2);
    const auto e = channel::sic_decode({0.5, 1.2, DecodeOrder::User1First}, g);
    CHECK(e.user1);
    CHECK_FALSE(e.user2);
}

TEST_CASE("average SNR configuration") {
    const auto cfg = AvgSnrConfig::from_db(30.0, 15.0, 0.2);
    CHECK(cfg.rho_bar1() == Approx(200.0));
    CHECK(cfg.rho_bar2() == Approx(0.8 * std::pow(10.0, 1.5)));
    CHECK_NOTHROW(cfg.validate());
    AvgSnrConfig bad = cfg;
    bad.beta2 = 0.7;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Rayleigh SNR draws have the configured mean") {
    Rng rng = make_stream(3, 0);
    double sum = 0.0;
    const int n = 200000;
    for (int k = 0; k < n; ++k) sum += channel::sample_snr(10.0, rng);
    CHECK(sum / n == Approx(10.0).epsilon(0.01));
}
