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

#include "nomadelay/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <iostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

namespace nomadelay {

const char* to_string(Fidelity fidelity) {
    switch (fidelity) {
        case Fidelity::Exact:
            return "exact";
        case Fidelity::ExactNearest:
            return "exact_nearest";
        case Fidelity::Approximate:
            return "approximate";
    }
    return "?";
}

namespace sim {

const char* to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Inconclusive:
            return "inconclusive";
        case Verdict::Fail:
            return "fail";
    }
    return "?";
}

namespace {

constexpr std::size_t kHistBins = 1025;
constexpr double kBitSlack = 1e-9;

struct QueueStats {
    std::vector<std::uint64_t> delay_hist = std::vector<std::uint64_t>(kHistBins, 0);
    std::vector<std::uint64_t> censored_hist = std::vector<std::uint64_t>(kHistBins, 0);
    std::uint64_t batches = 0;
    bool saturated = false;
};

std::size_t bin(std::uint64_t d) { return static_cast<std::size_t>(std::min<std::uint64_t>(d, kHistBins - 1)); }

class Queue {
  public:
    Queue(double alpha, std::uint64_t burn_in) : alpha_(alpha), burn_in_(burn_in) {}

    // Enqueue the slot's arrivals, then serve `offer` bits FIFO in slot t. A
    // batch served in its arrival slot has delay 0.
    void step(std::uint64_t t, double offer, QueueStats& st) {
        if (alpha_ > 0.0) q_.emplace_back(t, alpha_);
        while (offer > 0.0 && !q_.empty()) {
            auto& head = q_.front();
            if (head.second <= offer + kBitSlack) {
                offer -= head.second;
                if (head.first >= burn_in_) {
                    ++st.delay_hist[bin(t - head.first)];
                    ++st.batches;
                }
                q_.pop_front();
            } else {
                head.second -= offer;
                offer = 0.0;
            }
        }
    }

    std::size_t size() const { return q_.size(); }

    // Batches still queued after slot `end - 1`: delay is at least end - arrival.
    void censor(std::uint64_t end, QueueStats& st) const {
        for (const auto& b : q_)
            if (b.first >= burn_in_) ++st.censored_hist[bin(end - b.first)];
    }

  private:
    double alpha_;
    std::uint64_t burn_in_;
    std::deque<std::pair<std::uint64_t, double>> q_;
};

UserReport finish(const QueueStats& st, int w_max) {
    UserReport r;
    r.delay_hist = st.delay_hist;
    r.censored_hist = st.censored_hist;
    r.batches = st.batches;
    r.saturated = st.saturated;
    for (int w = 0; w <= w_max; ++w) {
        std::uint64_t viol = 0;
        std::uint64_t trials = st.batches;
        for (std::size_t d = 0; d < kHistBins; ++d) {
            if (d > static_cast<std::size_t>(w)) {
                viol += st.delay_hist[d] + st.censored_hist[d];
                trials += st.censored_hist[d];
            }
        }
        // The overflow bin is "at least", so it still counts as > w when w < size - 1.
        r.trials.push_back(trials);
        r.pv.push_back(trials ? static_cast<double>(viol) / static_cast<double>(trials) : 0.0);
        r.ci.push_back(trials ? wilson_interval(viol, trials) : Interval{0.0, 1.0});
    }
    return r;
}

void merge(QueueStats& into, const QueueStats& from) {
    for (std::size_t d = 0; d < kHistBins; ++d) {
        into.delay_hist[d] += from.delay_hist[d];
        into.censored_hist[d] += from.censored_hist[d];
    }
    into.batches += from.batches;
    into.saturated = into.saturated || from.saturated;
}

// Runs `replications` independent queues. make_offer() builds, per
// replication, a callable offer(rng, bits) that fills the bits offered to
// user 1 and 2 in one slot.
template <class MakeOffer>
std::pair<QueueStats, QueueStats> run(double alpha1, double alpha2, const SimOptions& opts,
                                      MakeOffer make_offer) {
    if (opts.slots < 1) throw std::invalid_argument("simulation needs at least one slot");
    if (opts.replications < 1) throw std::invalid_argument("need at least one replication");
    const auto reps = static_cast<std::size_t>(opts.replications);
    std::vector<QueueStats> s1(reps), s2(reps);
    parallel_chunks(reps, opts.threads, [&](std::size_t r) {
        Rng rng = make_stream(opts.seed, 0x51a00000ULL + r);
        const std::uint64_t n = opts.slots * (r + 1) / reps - opts.slots * r / reps;
        const std::uint64_t end = opts.burn_in + n;
        Queue q1(alpha1, opts.burn_in), q2(alpha2, opts.burn_in);
        auto offer = make_offer();
        double bits[2];
        std::uint64_t t = 0;
        for (; t < end; ++t) {
            offer(rng, bits);
            q1.step(t, bits[0], s1[r]);
            q2.step(t, bits[1], s2[r]);
            if (q1.size() > opts.max_backlog || q2.size() > opts.max_backlog) {
                (q1.size() > opts.max_backlog ? s1[r] : s2[r]).saturated = true;
                ++t;
                break;
            }
        }
        q1.censor(t, s1[r]);
        q2.censor(t, s2[r]);
    });
    QueueStats m1, m2;
    for (std::size_t r = 0; r < reps; ++r) {
        merge(m1, s1[r]);
        merge(m2, s2[r]);
    }
    return {m1, m2};
}

// Draws a product-grid index by the axis masses.
class CellSampler {
  public:
    explicit CellSampler(const SnrGrid& grid)
        : grid_(grid),
          d1_(grid.axis1().mass.begin(), grid.axis1().mass.end()),
          d2_(grid.axis2().mass.begin(), grid.axis2().mass.end()) {}

    std::size_t operator()(Rng& rng) {
        const auto i1 = static_cast<std::size_t>(d1_(rng));
        const auto i2 = static_cast<std::size_t>(d2_(rng));
        return grid_.index(i1, i2);
    }

  private:
    const SnrGrid& grid_;
    std::discrete_distribution<int> d1_;
    std::discrete_distribution<int> d2_;
};

}  // namespace

SimReport simulate(const SnrGrid& grid, const RatePolicy& policy, const ArrivalSpec& arrival1,
                   const ArrivalSpec& arrival2, const SimOptions& opts) {
    arrival1.validate();
    arrival2.validate();
    if (policy.points.size() != grid.size())
        throw std::invalid_argument("policy does not cover the grid");
    const double n_d = policy.n_d;
    const ErrorModel model = policy.model;
    std::pair<QueueStats, QueueStats> stats;
    switch (opts.fidelity) {
        case Fidelity::Approximate:
            stats = run(arrival1.alpha, arrival2.alpha, opts, [&] {
                return [&, cells = CellSampler(grid),
                        u = std::uniform_real_distribution<double>()](Rng& rng, double* bits) mutable {
                    const PointDecision& d = policy.points[cells(rng)];
                    bits[0] = u(rng) >= d.eps.eps1 ? n_d * d.rates.r1 : 0.0;
                    bits[1] = u(rng) >= d.eps.eps2 ? n_d * d.rates.r2 : 0.0;
                };
            });
            break;
        case Fidelity::Exact:
            stats = run(arrival1.alpha, arrival2.alpha, opts, [&] {
                return [&, cells = CellSampler(grid)](Rng& rng, double* bits) mutable {
                    const std::size_t i = cells(rng);
                    const SnrPair est = grid.estimate(i);
                    SnrPair g = est;
                    if (grid.sigma_z2(1) > 0.0)
                        g.gamma1 = csi::sample_true_given_estimate(grid.rho_bar(1), est.gamma1,
                                                                   grid.sigma_z2(1), rng);
                    if (grid.sigma_z2(2) > 0.0)
                        g.gamma2 = csi::sample_true_given_estimate(grid.rho_bar(2), est.gamma2,
                                                                   grid.sigma_z2(2), rng);
                    const PointDecision& d = policy.points[i];
                    const channel::Decoded ok = errors::exact_decode(model, d.rates, g, rng);
                    bits[0] = ok.user1 ? n_d * d.rates.r1 : 0.0;
                    bits[1] = ok.user2 ? n_d * d.rates.r2 : 0.0;
                };
            });
            break;
        case Fidelity::ExactNearest:
            stats = run(arrival1.alpha, arrival2.alpha, opts, [&] {
                return [&](Rng& rng, double* bits) {
                    const csi::EstimateDraw a =
                        csi::sample_exact(grid.rho_bar(1), grid.sigma_z2(1), rng);
                    const csi::EstimateDraw b =
                        csi::sample_exact(grid.rho_bar(2), grid.sigma_z2(2), rng);
                    const PointDecision& d = policy.points[grid.nearest(a.rho_hat, b.rho_hat)];
                    const channel::Decoded ok =
                        errors::exact_decode(model, d.rates, {a.gamma, b.gamma}, rng);
                    bits[0] = ok.user1 ? n_d * d.rates.r1 : 0.0;
                    bits[1] = ok.user2 ? n_d * d.rates.r2 : 0.0;
                };
            });
            break;
    }
    SimReport rep;
    rep.user[0] = finish(stats.first, opts.w_max);
    rep.user[1] = finish(stats.second, opts.w_max);
    rep.slots = opts.slots;
    rep.seed = opts.seed;
    rep.fidelity = opts.fidelity;
    rep.w_max = opts.w_max;
    for (int k = 0; k < 2; ++k)
        if (rep.user[k].saturated)
            std::cerr << "warning: queue of user " << k + 1
                      << " saturated; the arrival rate likely exceeds the service rate\n";
    return rep;
}

UserReport simulate_constant(double alpha, double bits, double eps, const SimOptions& opts) {
    ArrivalSpec{alpha}.validate();
    auto stats = run(alpha, 0.0, opts, [&] {
        return [&, u = std::uniform_real_distribution<double>()](Rng& rng, double* offer) mutable {
            offer[0] = u(rng) >= eps ? bits : 0.0;
            offer[1] = 0.0;
        };
    });
    return finish(stats.first, opts.w_max);
}

Dominance compare(const UserReport& report, const std::vector<DelayBound>& bounds) {
    Dominance dom;
    std::vector<double> ws, ls, lb;
    for (const DelayBound& b : bounds) {
        if (b.w < 0 || static_cast<std::size_t>(b.w) >= report.pv.size())
            throw std::invalid_argument("bound deadline " + std::to_string(b.w) +
                                        " not covered by the simulation report");
        CompareRow row;
        row.w = b.w;
        row.pv = report.pv[static_cast<std::size_t>(b.w)];
        row.ci_lo = report.ci[static_cast<std::size_t>(b.w)].lo;
        row.ci_hi = report.ci[static_cast<std::size_t>(b.w)].hi;
        row.bound = b.bound;
        if (row.ci_hi <= row.bound)
            row.verdict = Verdict::Pass;
        else if (row.pv <= row.bound)
            row.verdict = Verdict::Inconclusive;
        else
            row.verdict = Verdict::Fail;
        if (row.verdict == Verdict::Fail) dom.dominated = false;
        if (row.pv > 0.0 && row.bound > 0.0) {
            ws.push_back(row.w);
            ls.push_back(std::log10(row.pv));
            lb.push_back(std::log10(row.bound));
        }
        dom.rows.push_back(row);
    }
    auto slope = [&](const std::vector<double>& y) {
        if (ws.size() < 2) return 0.0;
        const double n = static_cast<double>(ws.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t k = 0; k < ws.size(); ++k) {
            sx += ws[k];
            sy += y[k];
            sxx += ws[k] * ws[k];
            sxy += ws[k] * y[k];
        }
        const double den = n * sxx - sx * sx;
        return den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
    };
    dom.slope_sim = slope(ls);
    dom.slope_bound = slope(lb);
    return dom;
}

}  // namespace sim
}  // namespace nomadelay
