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

#include "nomadelay/validation.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nomadelay {
namespace validation {

std::string model_label(const ErrorModel& model) {
    std::string s = model.csi == CsiModel::Perfect ? "pcsi" : "icsi";
    if (model.finite_blocklength()) s += "_fbl";
    s += "_";
    s += to_string(model.decoder);
    return s;
}

namespace {
double user_eps(const ErrorPair& e, int user) { return e.eps(user); }

void set_rate(RatePair& r, int user, double v) { (user == 1 ? r.r1 : r.r2) = v; }

EpsTuple draw_tuple(Rng& rng, const TupleOptions& opts) {
    std::uniform_real_distribution<double> u;
    std::uniform_int_distribution<int> ntr(opts.n_tr_lo, opts.n_tr_hi);
    EpsTuple t;
    t.model.csi = CsiModel::Imperfect;
    t.model.coding = u(rng) < 0.5 ? Coding::InfiniteBlocklength : Coding::FiniteBlocklength;
    t.model.decoder = u(rng) < 0.5 ? Decoder::Sic : Decoder::Joint;
    const double beta[2] = {opts.beta1, 1.0 - opts.beta1};
    const int n_tr[2] = {ntr(rng), ntr(rng)};
    t.model.n_d = opts.n_total - n_tr[0] - n_tr[1];
    double rho_bar[2], sz[2], rho_hat[2];
    for (int k = 0; k < 2; ++k) {
        rho_bar[k] = from_db(opts.snr_db_lo + (opts.snr_db_hi - opts.snr_db_lo) * u(rng));
        // Training runs orthogonally at the full-power SNR.
        sz[k] = csi::estimation_error_variance(rho_bar[k] / beta[k], n_tr[k]);
        rho_hat[k] = csi::sample_exact(rho_bar[k], sz[k], rng).rho_hat;
    }
    t.ctx = {rho_bar[0], rho_bar[1], sz[0], sz[1]};
    t.rho_hat = {rho_hat[0], rho_hat[1]};
    t.state = csi::make_state(rho_bar[0], rho_bar[1], rho_hat[0], rho_hat[1], sz[0], sz[1]);
    const channel::Corners c = channel::corner_points(t.rho_hat);
    if (t.model.decoder == Decoder::Sic) {
        const bool b = u(rng) < 0.5;
        t.rates = b ? c.b : c.a;
        t.user = u(rng) < 0.5 ? 1 : 2;
    } else {
        const double mix = u(rng);
        t.rates = {mix * c.a.r1 + (1.0 - mix) * c.b.r1, mix * c.a.r2 + (1.0 - mix) * c.b.r2,
                   DecodeOrder::Joint};
        t.user = 1;
    }
    const double f1 = 0.3 + 0.7 * u(rng);
    const double f2 = 0.3 + 0.7 * u(rng);
    t.rates.r1 *= f1;
    t.rates.r2 *= f2;
    return t;
}
}  // namespace

EpsCheck check(const EpsTuple& tuple, std::uint64_t samples, std::uint64_t seed,
               unsigned threads) {
    EpsCheck c;
    c.tuple = tuple;
    c.analytic = user_eps(errors::evaluate(tuple.model, tuple.rates, tuple.state), tuple.user);
    const errors::OracleResult o =
        errors::oracle_eps(tuple.model, tuple.rates, tuple.rho_hat, tuple.ctx, samples, seed, threads);
    c.oracle = user_eps(o.eps, tuple.user);
    c.ci = tuple.user == 1 ? o.ci1 : o.ci2;
    return c;
}

std::vector<EpsCheck> sample_checks(int count, std::uint64_t seed, const TupleOptions& opts,
                                    unsigned threads) {
    Rng rng = make_stream(seed, 0x7a11d000ULL);
    std::vector<EpsCheck> out;
    const double lo_screen = opts.eps_lo * 0.5;
    const double hi_screen = opts.eps_hi * 2.0;
    for (int attempt = 0; attempt < opts.max_attempts && static_cast<int>(out.size()) < count;
         ++attempt) {
        const EpsTuple t = draw_tuple(rng, opts);
        const std::uint64_t s = seed + 1000003ULL * static_cast<std::uint64_t>(attempt + 1);
        const EpsCheck screen = check(t, opts.screen_samples, s, threads);
        if (screen.oracle < lo_screen || screen.oracle > hi_screen) continue;
        EpsCheck full = check(t, opts.oracle_samples, s ^ 0x5bd1e995ULL, threads);
        if (full.oracle < opts.eps_lo || full.oracle > opts.eps_hi) continue;
        out.push_back(std::move(full));
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("validity-regime sampler found only " + std::to_string(out.size()) +
                                 " tuples");
    return out;
}

namespace {
template <class EpsAt>
double bisect_rate(double hi, double target, EpsAt eps_at) {
    double lo = 0.0;
    if (eps_at(hi) <= target) return hi;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (eps_at(mid) <= target ? lo : hi) = mid;
    }
    return lo;
}
}  // namespace

double analytic_rate_for_eps(const ErrorModel& model, RatePair rates, const EstimatedState& est,
                             int user, double target) {
    const double hi = std::log2(1.0 + est.rho_hat(user) + 10.0 * est.sigma_ic(user)) + 1.0;
    return bisect_rate(hi, target, [&](double r) {
        set_rate(rates, user, r);
        return user_eps(errors::evaluate(model, rates, est), user);
    });
}

double oracle_rate_for_eps(const ErrorModel& model, RatePair rates, SnrPair rho_hat,
                           const errors::ExactContext& ctx, int user, double target,
                           std::uint64_t samples, std::uint64_t seed, unsigned threads) {
    const double g = user == 1 ? rho_hat.gamma1 : rho_hat.gamma2;
    const double hi = std::log2(1.0 + 4.0 * g) + 1.0;
    return bisect_rate(hi, target, [&](double r) {
        set_rate(rates, user, r);
        // Same seed every call: common random numbers keep the estimate monotone in r.
        return user_eps(errors::oracle_eps(model, rates, rho_hat, ctx, samples, seed, threads).eps,
                        user);
    });
}

}  // namespace validation
}  // namespace nomadelay
