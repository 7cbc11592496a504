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

#include <algorithm>
#include <cmath>
#include <random>

#include "nomadelay/alloc.hpp"

using namespace nomadelay;
using namespace nomadelay::alloc;
using Catch::Approx;

namespace {
GridAxis random_axis(Rng& rng, int n, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    GridAxis ax;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        ax.value.push_back(u(rng));
        ax.mass.push_back(0.1 + u(rng));
        total += ax.mass.back();
    }
    std::sort(ax.value.begin(), ax.value.end());
    for (double& m : ax.mass) m /= total;
    return ax;
}

SnrGrid random_grid(Rng& rng, int n1, int n2, double sz = 0.0) {
    return SnrGrid(random_axis(rng, n1, 5.0, 800.0), random_axis(rng, n2, 0.5, 60.0), 200.0, 25.3,
                   sz, sz);
}

ScenarioConfig reference() {
    ScenarioConfig sc;
    sc.snr = AvgSnrConfig::from_db(30.0, 15.0, 0.2);
    return sc;
}

ErrorModel icsi(Decoder d, bool fbl = false) {
    ErrorModel m;
    m.decoder = d;
    m.coding = fbl ? Coding::FiniteBlocklength : Coding::InfiniteBlocklength;
    return m;
}

// Lagrangian objective M_2(s2) + lambda M_1(s1) of a policy.
double objective(const SnrGrid& g, const RatePolicy& p, double s1, double s2, double lambda) {
    return alloc::policy_mellin(g, p, 2, s2) + lambda * alloc::policy_mellin(g, p, 1, s1);
}
}  // namespace

TEST_CASE("greedy knapsack is sandwiched by the exhaustive optimum") {
    Rng rng = make_stream(21, 0);
    std::uniform_real_distribution<double> u;
    for (int inst = 0; inst < 100; ++inst) {
        const int n = 6 + inst % 7;
        std::vector<KnapsackItem> items(n);
        double total = 0.0;
        for (auto& it : items) {
            it = {u(rng), u(rng)};
            total += it.weight;
        }
        const double budget = total * (0.1 + 0.8 * u(rng));
        const KnapsackSolution g = alloc::solve_knapsack(items, budget);
        double best = 0.0;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            double v = 0.0, w = 0.0;
            for (int k = 0; k < n; ++k)
                if (mask >> k & 1u) {
                    v += items[k].value;
                    w += items[k].weight;
                }
            if (w <= budget) best = std::max(best, v);
        }
        CHECK(g.weight <= budget);
        CHECK(g.value <= best + 1e-12);
        CHECK(best <= g.relaxed_value + 1e-12);
        if (g.split_item >= 0)
            CHECK(g.relaxed_value - g.value ==
                  Approx(g.split_fraction * items[static_cast<std::size_t>(g.split_item)].value)
                      .margin(1e-14));
    }
}

TEST_CASE("knapsack edge budgets and tie-breaking") {
    const std::vector<KnapsackItem> items{{1.0, 1.0}, {2.0, 2.0}, {0.5, 0.0}, {3.0, 1.0}};
    const KnapsackSolution all = alloc::solve_knapsack(items, 100.0);
    CHECK(std::count(all.selected.begin(), all.selected.end(), 1) == 4);
    CHECK(all.split_item == -1);
    const KnapsackSolution none = alloc::solve_knapsack(items, 0.0);
    // only the weightless item fits
    CHECK(none.selected == std::vector<char>{0, 0, 1, 0});
    // equal ratios 1 and 2: the lower index is scanned first
    const KnapsackSolution tie = alloc::solve_knapsack(items, 2.0);
    CHECK(tie.selected == std::vector<char>{1, 0, 1, 1});
    CHECK(tie.split_item == 1);
    CHECK(tie.split_fraction == 0.0);
}

TEST_CASE("SIC perfect-CSI policy uses corners and respects the budget") {
    Rng rng = make_stream(22, 0);
    const SnrGrid g = random_grid(rng, 4, 5);
    const double s1 = 0.01, s2 = 0.02, n = 200.0;
    const SicKnapsack k = alloc::sic_knapsack(g, s1, s2, n);
    double total = 0.0;
    for (const auto& it : k.items) total += it.weight;
    const RatePolicy all = alloc::optimize_sic_pcsi(g, s1, s2, n, total * 1.01);
    const RatePolicy none = alloc::optimize_sic_pcsi(g, s1, s2, n, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto c = channel::corner_points(g.estimate(i));
        CHECK(all.points[i].rates.r1 == c.b.r1);
        CHECK(all.points[i].rates.order == DecodeOrder::User1First);
        CHECK(none.points[i].rates.r1 == c.a.r1);
        CHECK(none.points[i].eps.eps1 == 0.0);
        CHECK(none.points[i].eps.eps2 == 0.0);
    }
    CHECK(alloc::policy_mellin(g, none, 1, s1) == Approx(k.m1_all_a));
    const double budget = 0.4 * total;
    const RatePolicy mid = alloc::optimize_sic_pcsi(g, s1, s2, n, budget);
    CHECK(alloc::policy_mellin(g, mid, 1, s1) <= k.m1_all_a + budget + 1e-15);
    CHECK_THROWS_AS(alloc::optimize_sic_pcsi(g, s1, s2, n, -1e-3), Infeasible);
}

TEST_CASE("joint closed form against a per-point numeric minimizer") {
    Rng rng = make_stream(23, 0);
    std::uniform_real_distribution<double> u;
    const SnrGrid g = random_grid(rng, 10, 10);
    const double n = 200.0;
    for (int draw = 0; draw < 10; ++draw) {
        const double s1 = std::pow(10.0, -3.0 + 2.0 * u(rng));
        const double s2 = std::pow(10.0, -3.0 + 2.0 * u(rng));
        const double lambda = std::pow(10.0, -4.0 + 8.0 * u(rng));
        const double lt = alloc::lambda_tilde_from_lambda(lambda, s1, s2, n);
        const RatePolicy p = alloc::optimize_joint_pcsi(g, s1, s2, n, lt);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const SnrPair e = g.estimate(i);
            const double rs = channel::r_sum(e);
            const double lo = channel::r_min(e.gamma1, e.gamma2), hi = channel::r_max(e.gamma1);
            auto f = [&](double r1) {
                return std::exp(-s2 * n * (rs - r1)) + lambda * std::exp(-s1 * n * r1);
            };
            double a = lo, b = hi;
            const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
            for (int it = 0; it < 200; ++it) {
                const double c = b - gr * (b - a), d = a + gr * (b - a);
                (f(c) <= f(d) ? b : a) = (f(c) <= f(d) ? d : c);
            }
            const double r1 = 0.5 * (a + b);
            CHECK(p.points[i].rates.r1 == Approx(r1).margin(1e-6));
            CHECK(p.points[i].rates.r1 + p.points[i].rates.r2 == Approx(rs).epsilon(1e-14));
            const double x = p.points[i].rates.r1;
            if (x > lo + 1e-9 && x < hi - 1e-9) {
                const double g2 = s2 * n * std::exp(-s2 * n * (rs - x));
                const double g1 = lambda * s1 * n * std::exp(-s1 * n * x);
                CHECK(std::abs(g2 - g1) <= 1e-9 * std::max(g1, g2));
            }
        }
    }
}

TEST_CASE("joint closed form limits") {
    Rng rng = make_stream(24, 0);
    const SnrGrid g = random_grid(rng, 3, 3);
    const RatePolicy half = alloc::optimize_joint_pcsi(g, 0.01, 0.01, 200.0, 0.0);
    const RatePolicy corner = alloc::optimize_joint_pcsi(g, 0.01, 0.01, 200.0, 1e9);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const SnrPair e = g.estimate(i);
        const double r1 = std::clamp(channel::r_sum(e) / 2.0, channel::r_min(e.gamma1, e.gamma2),
                                     channel::r_max(e.gamma1));
        CHECK(half.points[i].rates.r1 == Approx(r1).epsilon(1e-14));
        CHECK(corner.points[i].rates.r1 == Approx(channel::r_max(e.gamma1)).epsilon(1e-14));
        CHECK(half.points[i].eps.eps1 == 0.0);
    }
}

TEST_CASE("find_lambda on the SIC knapsack") {
    Rng rng = make_stream(25, 0);
    const SnrGrid g = random_grid(rng, 2, 4);
    const double s1 = 0.01, s2 = 0.015, n = 200.0;
    const SicPcsiSolver solver(g, n);
    const SicKnapsack k = alloc::sic_knapsack(g, s1, s2, n);
    const RatePolicy loose = alloc::find_lambda(solver, s1, s2, 1.0);
    for (const auto& pt : loose.points) CHECK(pt.rates.order == DecodeOrder::User1First);
    const RatePolicy at_a = alloc::find_lambda(solver, s1, s2, k.m1_all_a);
    CHECK(alloc::policy_mellin(g, at_a, 1, s1) <= k.m1_all_a * (1.0 + 1e-12));
    CHECK_THROWS_AS(alloc::find_lambda(solver, s1, s2, 0.99 * k.m1_all_a), Infeasible);
    // midpoint constraint against exhaustive search over the 2^8 decoding orders
    double m1_all_b = 0.0;
    for (const auto& it : k.items) m1_all_b += it.weight;
    m1_all_b += k.m1_all_a;
    const double constraint = 0.5 * (k.m1_all_a + m1_all_b);
    const RatePolicy mid = alloc::find_lambda(solver, s1, s2, constraint);
    double best = INFINITY, vmax = 0.0;
    for (const auto& it : k.items) vmax = std::max(vmax, it.value);
    for (unsigned mask = 0; mask < 256u; ++mask) {
        std::vector<char> sel(8);
        for (int b = 0; b < 8; ++b) sel[b] = mask >> b & 1u;
        const RatePolicy p = alloc::sic_policy_from_selection(g, sel, s1, s2, n);
        if (alloc::policy_mellin(g, p, 1, s1) <= constraint) best = std::min(best, alloc::policy_mellin(g, p, 2, s2));
    }
    const double got = alloc::policy_mellin(g, mid, 2, s2);
    CHECK(alloc::policy_mellin(g, mid, 1, s1) <= constraint * (1.0 + 1e-12));
    CHECK(got >= best - 1e-12);
    CHECK(got <= best + vmax + 1e-12);
}

TEST_CASE("find_lambda on the joint closed form") {
    Rng rng = make_stream(26, 0);
    const SnrGrid g = random_grid(rng, 5, 5);
    const double s1 = 0.01, s2 = 0.01, n = 200.0;
    const JointPcsiSolver solver(g, n);
    const RatePolicy corner_b = alloc::optimize_joint_pcsi(g, s1, s2, n, -1e9);
    const RatePolicy corner_a = alloc::optimize_joint_pcsi(g, s1, s2, n, 1e9);
    const double m1a = alloc::policy_mellin(g, corner_a, 1, s1);
    const double m1b = alloc::policy_mellin(g, corner_b, 1, s1);
    const double c = std::sqrt(m1a * m1b);
    const RatePolicy p = alloc::find_lambda(solver, s1, s2, c);
    const double m1 = alloc::policy_mellin(g, p, 1, s1);
    CHECK(m1 <= c * (1.0 + 1e-6));
    CHECK(m1 >= c * (1.0 - 1e-6));
    CHECK_THROWS_AS(alloc::find_lambda(solver, s1, s2, 0.9 * m1a), Infeasible);
}

TEST_CASE("grid optimizer picks the best candidate at every point") {
    const ScenarioConfig sc = reference();
    const SnrGrid g = csi::build_grid(sc, 4);
    for (Decoder d : {Decoder::Sic, Decoder::Joint}) {
        for (bool fbl : {false, true}) {
            const ErrorModel m = icsi(d, fbl);
            GridSearchOptions o;
            o.rate_candidates = 12;
            const GridOptimizer opt(m, g, 200.0, o);
            for (double lambda : {0.0, 0.3, 50.0}) {
                const double s1 = 0.004, s2 = 0.01;
                const RatePolicy p = opt.solve(s1, s2, lambda);
                for (std::size_t i = 0; i < g.size(); ++i) {
                    const EstimatedState st = g.state(i);
                    auto term = [&](const RatePair& r, const ErrorPair& e) {
                        return e.eps2 + (1 - e.eps2) * std::exp(-s2 * 200.0 * r.r2) +
                               lambda * (e.eps1 + (1 - e.eps1) * std::exp(-s1 * 200.0 * r.r1));
                    };
                    double best = INFINITY;
                    const std::vector<DecodeOrder> orders =
                        d == Decoder::Sic
                            ? std::vector<DecodeOrder>{DecodeOrder::User1First, DecodeOrder::User2First}
                            : std::vector<DecodeOrder>{DecodeOrder::Joint};
                    for (DecodeOrder od : orders) {
                        for (double r1 : opt.rate_axis(i, 1, od))
                            for (double r2 : opt.rate_axis(i, 2, od)) {
                                const RatePair r{r1, r2, od};
                                best = std::min(best, term(r, errors::evaluate(m, r, st)));
                            }
                    }
                    const PointDecision& pd = p.points[i];
                    const ErrorPair e = errors::evaluate(m, pd.rates, st);
                    CHECK(pd.eps.eps1 == e.eps1);
                    CHECK(pd.eps.eps2 == e.eps2);
                    CHECK(term(pd.rates, e) <= best * (1.0 + 1e-5) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("grid refinement changes the objective little") {
    const ScenarioConfig sc = reference();
    const SnrGrid full = csi::build_grid(sc, 3);
    const std::size_t i = full.index(1, 1);
    const SnrGrid one(GridAxis{{full.estimate(i).gamma1}, {1.0}}, GridAxis{{full.estimate(i).gamma2}, {1.0}},
                      full.rho_bar(1), full.rho_bar(2), full.sigma_z2(1), full.sigma_z2(2));
    const ErrorModel m = icsi(Decoder::Sic);
    const double s1 = 0.0076, s2 = 0.0042, lambda = 2.0;
    auto obj = [&](int mm) {
        GridSearchOptions o;
        o.rate_candidates = mm;
        return objective(one, optimize_grid(m, one, 200.0, s1, s2, lambda, o), s1, s2, lambda);
    };
    // Rate axes are linear on [0, max rate + backoff]: 16 candidates leave
    // about 0.5 bit spacing, so the 2% level is reached only from M = 64 on.
    const double coarse = obj(16), nested = obj(31), mid = obj(64), fine = obj(256);
    CHECK(fine <= coarse * (1.0 + 1e-6));
    CHECK(nested <= coarse * (1.0 + 1e-6));
    INFO("coarse " << coarse << " nested " << nested << " fine " << fine);
    CHECK(mid <= coarse * (1.0 + 1e-6));
    CHECK(mid <= fine * 1.02);
}

TEST_CASE("grid search under perfect CSI approaches the closed forms") {
    const ScenarioConfig sc = reference();
    const SnrGrid g = csi::build_grid(sc, 5);
    const double s1 = 0.004, s2 = 0.008, lambda = 1.5, n = 200.0;
    for (Decoder d : {Decoder::Sic, Decoder::Joint}) {
        ErrorModel m = icsi(d);
        m.csi = CsiModel::Perfect;
        const auto closed = alloc::make_solver(m, g, n);
        const double exact = objective(g, closed->solve(s1, s2, lambda), s1, s2, lambda);
        double prev = INFINITY;
        for (int mm : {16, 64, 256}) {
            GridSearchOptions o;
            o.rate_candidates = mm;
            const double v = objective(g, GridOptimizer(m, g, n, o).solve(s1, s2, lambda), s1, s2, lambda);
            CHECK(v >= exact * (1.0 - 1e-9));
            CHECK(v <= prev * (1.0 + 1e-6));
            prev = v;
        }
        CHECK(prev <= exact * 1.05);
    }
}

TEST_CASE("grid lambda search meets the user-1 constraint") {
    const ScenarioConfig sc = reference();
    const SnrGrid g = csi::build_grid(sc, 4);
    GridSearchOptions o;
    o.rate_candidates = 12;
    const GridOptimizer opt(icsi(Decoder::Sic), g, 200.0, o);
    const double s1 = 0.004, s2 = 0.01;
    const RatePolicy free = opt.solve(s1, s2, 0.0);
    const double m1_free = alloc::policy_mellin(g, free, 1, s1);
    const RatePolicy same = alloc::find_lambda(opt, s1, s2, m1_free * 1.01);
    CHECK(same.lambda == 0.0);
    const RatePolicy tight = alloc::find_lambda(opt, s1, s2, m1_free * 0.5);
    CHECK(alloc::policy_mellin(g, tight, 1, s1) <= m1_free * 0.5);
    CHECK(tight.lambda > 0.0);
    CHECK_THROWS_AS(alloc::find_lambda(opt, s1, s2, 1e-30), Infeasible);
}

TEST_CASE("outer loop: no constraint and tighter targets") {
    const ScenarioConfig sc = reference();
    const SnrGrid g = csi::build_grid(sc, 8);
    const JointPcsiSolver solver(g, 200.0);
    OuterOptions o;
    o.coarse_points = 5;
    const OuterResult free = alloc::outer_loop(solver, {400.0}, {250.0}, 5, 5, 1.0, o);
    CHECK(free.policy.lambda == 0.0);
    const OuterResult loose = alloc::outer_loop(solver, {400.0}, {250.0}, 5, 5, 1e-4, o);
    const OuterResult tight = alloc::outer_loop(solver, {400.0}, {250.0}, 5, 5, 1e-8, o);
    CHECK(loose.user1.bound <= 1e-4 * (1.0 + 1e-6));
    CHECK(tight.user1.bound <= 1e-8 * (1.0 + 1e-6));
    CHECK(free.user2.bound <= loose.user2.bound * (1.0 + 1e-6));
    CHECK(loose.user2.bound <= tight.user2.bound * (1.0 + 1e-6));
}

TEST_CASE("OMA baseline") {
    ScenarioConfig sc = reference();
    ErrorModel pm = icsi(Decoder::OmaSingleUser);
    pm.csi = CsiModel::Perfect;
    const OmaSetup su = alloc::oma_setup(sc, pm, 1, 0.5, 16);
    CHECK(su.n_d == 100.0);
    CHECK(su.rho_bar == Approx(1000.0));
    const OmaPolicy pp = alloc::oma_policy(su, 0.01);
    for (std::size_t i = 0; i < pp.rate.size(); ++i) {
        CHECK(pp.rate[i] == Approx(std::log2(1.0 + su.axis.value[i])).epsilon(1e-14));
        CHECK(pp.eps[i] == 0.0);
    }
    const OmaSetup si = alloc::oma_setup(sc, icsi(Decoder::OmaSingleUser, true), 2, 0.3, 16);
    CHECK(si.n_d == Approx(140.0));
    const OmaPolicy ip = alloc::oma_policy(si, 0.01, 64);
    for (std::size_t i = 0; i < ip.rate.size(); ++i) {
        const double sig = csi::icsi_stddev(si.rho_bar, si.axis.value[i], si.sigma_z2);
        CHECK(ip.eps[i] == errors::eps_oma(ip.rate[i], si.axis.value[i], sig, si.n_d));
    }
    const double a = alloc::oma_max_arrival(si, 5, 1e-4, 64);
    CHECK(a > 0.0);
    CHECK(alloc::oma_max_arrival(si, 10, 1e-4, 64) >= a);
    CHECK_THROWS_AS(alloc::oma_setup(sc, pm, 1, 1.0, 16), std::invalid_argument);
}

TEST_CASE("perfect-CSI OMA max arrival scales with the time share") {
    // Service is n_d * r with fixed rates, so the max arrival is linear in the split.
    ScenarioConfig sc = reference();
    ErrorModel pm = icsi(Decoder::OmaSingleUser);
    pm.csi = CsiModel::Perfect;
    const double ref = alloc::oma_max_arrival(alloc::oma_setup(sc, pm, 1, 0.5, 100), 5, 1e-8, 256);
    REQUIRE(ref > 0.0);
    for (int k = 1; k <= 19; ++k) {
        const double split = k / 20.0;
        const double a = alloc::oma_max_arrival(alloc::oma_setup(sc, pm, 1, split, 100), 5, 1e-8, 256);
        REQUIRE(std::isfinite(a));
        CHECK(a == Approx(ref * split / 0.5).epsilon(0.01));
    }
}
