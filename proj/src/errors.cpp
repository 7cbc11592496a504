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

#include "nomadelay/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/math/special_functions/erf.hpp>

namespace nomadelay {

const char* to_string(Decoder decoder) {
    switch (decoder) {
        case Decoder::Sic:
            return "sic";
        case Decoder::Joint:
            return "joint";
        case Decoder::OmaSingleUser:
            return "oma";
    }
    return "?";
}

void ErrorModel::validate() const {
    if (coding == Coding::FiniteBlocklength && n_d <= 0)
        throw std::invalid_argument("finite-blocklength model needs n_d > 0, got " +
                                    std::to_string(n_d));
}

namespace errors {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double clamp01(double x) {
    if (std::isnan(x)) return 1.0;
    return std::clamp(x, 0.0, 1.0);
}

double phi_of(double rate) { return std::exp2(rate) - 1.0; }

double dispersion(double gamma, Dispersion kind) {
    return kind == Dispersion::Awgn ? dispersion_awgn(gamma) : dispersion_iid(gamma);
}
}  // namespace

double q_function(double x) {
    if (x > 38.0) return 0.0;
    if (x < -38.0) return 1.0;
    return 0.5 * std::erfc(x / std::sqrt(2.0));
}

double q_inverse(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("q_inverse needs p in (0, 1), got " + std::to_string(p));
    return std::sqrt(2.0) * boost::math::erfc_inv(2.0 * p);
}

double q_ratio(double numerator, double scale) {
    if (scale > 0.0) return q_function(numerator / scale);
    if (numerator > 0.0) return 0.0;
    if (numerator < 0.0) return 1.0;
    return 0.5;
}

double dispersion_awgn(double gamma) {
    const double inv = 1.0 / (1.0 + gamma);
    return kLog2e * kLog2e * (1.0 - inv * inv);
}

double dispersion_iid(double gamma) { return kLog2e * kLog2e * 2.0 * gamma / (1.0 + gamma); }

double dispersion_mac(double gamma1, double gamma2) {
    const double s = 1.0 + gamma1 + gamma2;
    return dispersion_awgn(gamma1 + gamma2) + 2.0 * kLog2e * kLog2e * gamma1 * gamma2 / (s * s);
}

double eps_fbl_pcsi(double rate, double sinr, double n_d, Dispersion kind) {
    return q_ratio(std::log2(1.0 + sinr) - rate, std::sqrt(dispersion(sinr, kind) / n_d));
}

double fbl_sigma(double gamma, double n_d, Dispersion kind) {
    return (1.0 + gamma) / kLog2e * std::sqrt(dispersion(gamma, kind) / n_d);
}

namespace {

// Integral over x in [a, b] of the Gaussian density of the last user's SNR
// N(rho_l, sigma_l^2) times the Chernoff bound 1/2 exp(-t^2 / 2) of the first
// user's tail, t = (rho_f - phi_f (x + 1)) / sigma_f. Completing the square
// leaves a scaled Gaussian probability.
double chernoff_strip(double rho_f, double sigma_f, double rho_l, double sigma_l, double phi_f,
                      double a, double b) {
    if (!(b > a)) return 0.0;
    const double d = phi_f * phi_f * sigma_l * sigma_l + sigma_f * sigma_f;
    if (!(d > 0.0) || !(sigma_f > 0.0) || !(sigma_l > 0.0)) return 0.0;
    const double sd = std::sqrt(d);
    const double sigma_n = sigma_l * sigma_f / sd;
    const double mu_n =
        (rho_l * sigma_f * sigma_f + sigma_l * sigma_l * phi_f * (rho_f - phi_f)) / d;
    const double off = phi_f * (rho_l + 1.0) - rho_f;
    const double upper = std::isinf(b) ? 0.0 : q_ratio(b - mu_n, sigma_n);
    return 0.5 * (sigma_f / sd) * std::exp(-off * off / (2.0 * d)) *
           (q_ratio(a - mu_n, sigma_n) - upper);
}

struct SicSide {
    double rho_hat = 0.0;
    double rate = 0.0;
    double sigma = 0.0;  // spread of the true SNR (interference-limited for f)
};

struct SicResult {
    double first = 0.0;
    double last = 0.0;
};

// f is decoded first, l last. sigma_own_l is the spread used for the last
// user's own decoding; with finite blocklength the last user adds the first
// user's error instead of the exact complement region.
SicResult sic_generic(const SicSide& f, const SicSide& l, double sigma_own_l, bool fbl) {
    SicResult out;
    const double phi_f = phi_of(f.rate);
    const double phi_l = phi_of(l.rate);
    if (f.rate > 0.0 && f.rho_hat <= 0.0) {
        out.first = 1.0;
    } else {
        const double turn = phi_f > 0.0 ? f.rho_hat / phi_f - 1.0 : kInf;
        if (l.sigma > 0.0) {
            const double tail = std::isinf(turn) ? 0.0 : q_ratio(turn - l.rho_hat, l.sigma);
            out.first = clamp01(tail + chernoff_strip(f.rho_hat, f.sigma, l.rho_hat, l.sigma,
                                                      phi_f, 0.0, turn));
        } else {
            // Interferer known: a plain Gaussian tail of the first user's SNR.
            out.first = q_ratio(f.rho_hat - phi_f * (l.rho_hat + 1.0), f.sigma);
        }
    }
    if (l.rate > 0.0 && l.rho_hat <= 0.0) {
        out.last = 1.0;
        return out;
    }
    const double own = q_ratio(l.rho_hat - phi_l, sigma_own_l);
    if (fbl) {
        out.last = std::min(1.0, own + out.first);
        return out;
    }
    if (out.first >= 1.0) {
        out.last = 1.0;
        return out;
    }
    if (!(l.sigma > 0.0)) {
        out.last = clamp01(own + (1.0 - own) * out.first);
        return out;
    }
    const double turn = phi_f > 0.0 ? f.rho_hat / phi_f - 1.0 : kInf;
    const double lo = std::max(turn, phi_l);
    const double tail = std::isinf(lo) ? 0.0 : q_ratio(lo - l.rho_hat, l.sigma);
    const double strip = chernoff_strip(f.rho_hat, f.sigma, l.rho_hat, l.sigma, phi_f, phi_l, turn);
    out.last = clamp01(own + tail + strip);
    return out;
}

ErrorPair assemble(const RatePair& rates, const SicResult& r) {
    if (rates.order == DecodeOrder::User1First) return {r.first, r.last};
    return {r.last, r.first};
}

void require_sic(const RatePair& rates) {
    if (rates.order == DecodeOrder::Joint)
        throw std::invalid_argument("SIC error model needs a decoding order, got joint");
}

int first_user(const RatePair& rates) { return rates.order == DecodeOrder::User1First ? 1 : 2; }

double rate_of(const RatePair& rates, int user) { return user == 1 ? rates.r1 : rates.r2; }

}  // namespace

ErrorPair eps_sic_icsi(const RatePair& rates, const EstimatedState& est) {
    require_sic(rates);
    const int fu = first_user(rates);
    const int lu = 3 - fu;
    const SicSide f{est.rho_hat(fu), rate_of(rates, fu), est.sigma_ic(fu)};
    const SicSide l{est.rho_hat(lu), rate_of(rates, lu), est.sigma_ic(lu)};
    return assemble(rates, sic_generic(f, l, l.sigma, false));
}

ErrorPair eps_sic_icsi_fbl(const RatePair& rates, const EstimatedState& est, double n_d) {
    require_sic(rates);
    const int fu = first_user(rates);
    const int lu = 3 - fu;
    const double rho_f = est.rho_hat(fu);
    const double rho_l = est.rho_hat(lu);
    const double sf_fbl =
        (1.0 + rho_l) * fbl_sigma(rho_f / (rho_l + 1.0), n_d, Dispersion::Iid);
    const double sf = std::hypot(est.sigma_ic(fu), sf_fbl);
    const double sl_own = std::hypot(est.sigma_ic(lu), fbl_sigma(rho_l, n_d, Dispersion::Iid));
    const SicSide f{rho_f, rate_of(rates, fu), sf};
    const SicSide l{rho_l, rate_of(rates, lu), est.sigma_ic(lu)};
    return assemble(rates, sic_generic(f, l, sl_own, true));
}

namespace {
double joint_union(const RatePair& rates, const EstimatedState& est, double s1, double s2,
                   double s3) {
    if ((rates.r1 > 0.0 && est.rho_hat1 <= 0.0) || (rates.r2 > 0.0 && est.rho_hat2 <= 0.0))
        return 1.0;
    const double e1 = q_ratio(est.rho_hat1 - phi_of(rates.r1), s1);
    const double e2 = q_ratio(est.rho_hat2 - phi_of(rates.r2), s2);
    const double e3 = q_ratio(est.rho_hat1 + est.rho_hat2 - phi_of(rates.r1 + rates.r2), s3);
    return std::min(1.0, e1 + e2 + e3);
}
}  // namespace

double eps_joint_icsi(const RatePair& rates, const EstimatedState& est) {
    return joint_union(rates, est, est.sigma_ic1, est.sigma_ic2,
                       std::hypot(est.sigma_ic1, est.sigma_ic2));
}

double eps_joint_icsi_fbl(const RatePair& rates, const EstimatedState& est, double n_d) {
    const double s1 = std::hypot(est.sigma_ic1, fbl_sigma(est.rho_hat1, n_d, Dispersion::Awgn));
    const double s2 = std::hypot(est.sigma_ic2, fbl_sigma(est.rho_hat2, n_d, Dispersion::Awgn));
    const double g = est.rho_hat1 + est.rho_hat2;
    const double mac = (1.0 + g) * (1.0 + g) / (kLog2e * kLog2e) *
                       dispersion_mac(est.rho_hat1, est.rho_hat2) / n_d;
    const double s3 = std::sqrt(est.sigma_ic1 * est.sigma_ic1 + est.sigma_ic2 * est.sigma_ic2 + mac);
    return joint_union(rates, est, s1, s2, s3);
}

double eps_oma(double rate, double rho_hat, double sigma_ic, double n_d_oma) {
    if (rate > 0.0 && rho_hat <= 0.0) return 1.0;
    double s = sigma_ic;
    if (n_d_oma > 0.0) s = std::hypot(sigma_ic, fbl_sigma(rho_hat, n_d_oma, Dispersion::Awgn));
    return q_ratio(rho_hat - phi_of(rate), s);
}

ErrorPair evaluate(const ErrorModel& model, const RatePair& rates, const EstimatedState& est) {
    const bool fbl = model.finite_blocklength();
    const double n = static_cast<double>(model.n_d);
    const SnrPair g{est.rho_hat1, est.rho_hat2};
    if (model.decoder == Decoder::OmaSingleUser)
        throw std::invalid_argument("evaluate() covers NOMA decoders; use evaluate_oma()");
    if (model.decoder == Decoder::Joint) {
        double e;
        if (model.csi == CsiModel::Perfect && !fbl) {
            e = channel::in_region(rates, g) ? 0.0 : 1.0;
        } else if (model.csi == CsiModel::Perfect) {
            const EstimatedState exact{est.rho_hat1, est.rho_hat2, 0.0, 0.0};
            e = eps_joint_icsi_fbl(rates, exact, n);
        } else {
            e = fbl ? eps_joint_icsi_fbl(rates, est, n) : eps_joint_icsi(rates, est);
        }
        return {e, e};
    }
    require_sic(rates);
    if (model.csi == CsiModel::Perfect && !fbl) {
        const channel::Decoded d = channel::sic_decode(rates, g);
        return {d.user1 ? 0.0 : 1.0, d.user2 ? 0.0 : 1.0};
    }
    if (model.csi == CsiModel::Perfect) {
        const int fu = first_user(rates);
        const int lu = 3 - fu;
        const double rho_f = est.rho_hat(fu);
        const double rho_l = est.rho_hat(lu);
        const double ef =
            eps_fbl_pcsi(rate_of(rates, fu), rho_f / (rho_l + 1.0), n, Dispersion::Iid);
        const double el =
            std::min(1.0, ef + eps_fbl_pcsi(rate_of(rates, lu), rho_l, n, Dispersion::Iid));
        return assemble(rates, {ef, el});
    }
    return fbl ? eps_sic_icsi_fbl(rates, est, n) : eps_sic_icsi(rates, est);
}

double evaluate_oma(const ErrorModel& model, double rate, double rho_hat, double sigma_ic,
                    double n_d_oma) {
    const bool fbl = model.finite_blocklength();
    if (model.csi == CsiModel::Perfect && !fbl) return rate <= std::log2(1.0 + rho_hat) ? 0.0 : 1.0;
    const double s = model.csi == CsiModel::Perfect ? 0.0 : sigma_ic;
    return eps_oma(rate, rho_hat, s, fbl ? n_d_oma : 0.0);
}

namespace {
// Blocklength-n capacity proxy: log2(1 + g) + sqrt(V(g) / n) * U, U ~ N(0,1).
bool fbl_ok(double rate, double sinr, double n, Dispersion kind, Rng& rng) {
    std::normal_distribution<double> normal;
    const double c = std::log2(1.0 + sinr) + std::sqrt(dispersion(sinr, kind) / n) * normal(rng);
    return rate <= c;
}
}  // namespace

channel::Decoded exact_decode(const ErrorModel& model, const RatePair& rates, SnrPair gamma,
                              Rng& rng) {
    if (!model.finite_blocklength()) {
        if (model.decoder == Decoder::Joint) {
            const bool ok = channel::in_region(rates, gamma);
            return {ok, ok};
        }
        require_sic(rates);
        return channel::sic_decode(rates, gamma);
    }
    const double n = static_cast<double>(model.n_d);
    if (model.decoder == Decoder::Joint) {
        std::normal_distribution<double> normal;
        const double u1 = normal(rng);
        const double u2 = normal(rng);
        const double u3 = normal(rng);
        const double g1 = gamma.gamma1;
        const double g2 = gamma.gamma2;
        const bool ok1 = rates.r1 <= std::log2(1.0 + g1) + std::sqrt(dispersion_awgn(g1) / n) * u1;
        const bool ok2 = rates.r2 <= std::log2(1.0 + g2) + std::sqrt(dispersion_awgn(g2) / n) * u2;
        const bool ok3 = rates.r1 + rates.r2 <=
                         std::log2(1.0 + g1 + g2) + std::sqrt(dispersion_mac(g1, g2) / n) * u3;
        const bool ok = ok1 && ok2 && ok3;
        return {ok, ok};
    }
    require_sic(rates);
    const int fu = first_user(rates);
    const double gf = fu == 1 ? gamma.gamma1 : gamma.gamma2;
    const double gl = fu == 1 ? gamma.gamma2 : gamma.gamma1;
    const bool first = fbl_ok(rate_of(rates, fu), gf / (gl + 1.0), n, Dispersion::Iid, rng);
    const bool last = first && fbl_ok(rate_of(rates, 3 - fu), gl, n, Dispersion::Iid, rng);
    return fu == 1 ? channel::Decoded{first, last} : channel::Decoded{last, first};
}

bool exact_decode_oma(const ErrorModel& model, double rate, double gamma, double n_d_oma,
                      Rng& rng) {
    if (!model.finite_blocklength()) return rate <= std::log2(1.0 + gamma);
    return fbl_ok(rate, gamma, n_d_oma, Dispersion::Awgn, rng);
}

namespace {
constexpr std::size_t kOracleChunks = 64;

template <class Trial>
OracleResult run_oracle(std::uint64_t samples, std::uint64_t seed, unsigned threads,
                        Trial trial) {
    if (samples == 0) throw std::invalid_argument("oracle needs at least one sample");
    std::vector<std::uint64_t> e1(kOracleChunks, 0), e2(kOracleChunks, 0);
    parallel_chunks(kOracleChunks, threads, [&](std::size_t c) {
        const std::uint64_t begin = samples * c / kOracleChunks;
        const std::uint64_t end = samples * (c + 1) / kOracleChunks;
        Rng rng = make_stream(seed, 0x0a0c0000ULL + c);
        std::uint64_t f1 = 0, f2 = 0;
        for (std::uint64_t k = begin; k < end; ++k) {
            const channel::Decoded d = trial(rng);
            f1 += d.user1 ? 0 : 1;
            f2 += d.user2 ? 0 : 1;
        }
        e1[c] = f1;
        e2[c] = f2;
    });
    OracleResult r;
    r.samples = samples;
    for (std::size_t c = 0; c < kOracleChunks; ++c) {
        r.errors1 += e1[c];
        r.errors2 += e2[c];
    }
    const double n = static_cast<double>(samples);
    r.eps = {static_cast<double>(r.errors1) / n, static_cast<double>(r.errors2) / n};
    r.ci1 = wilson_interval(r.errors1, samples);
    r.ci2 = wilson_interval(r.errors2, samples);
    return r;
}
}  // namespace

OracleResult oracle_eps(const ErrorModel& model, const RatePair& rates, SnrPair rho_hat,
                        const ExactContext& ctx, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads) {
    model.validate();
    if (model.decoder == Decoder::OmaSingleUser)
        throw std::invalid_argument("oracle_eps covers NOMA decoders; use oracle_eps_oma()");
    const double sz1 = model.csi == CsiModel::Perfect ? 0.0 : ctx.sigma_z2_1;
    const double sz2 = model.csi == CsiModel::Perfect ? 0.0 : ctx.sigma_z2_2;
    return run_oracle(samples, seed, threads, [&](Rng& rng) {
        SnrPair g{rho_hat.gamma1, rho_hat.gamma2};
        if (sz1 > 0.0) g.gamma1 = csi::sample_true_given_estimate(ctx.rho_bar1, rho_hat.gamma1, sz1, rng);
        if (sz2 > 0.0) g.gamma2 = csi::sample_true_given_estimate(ctx.rho_bar2, rho_hat.gamma2, sz2, rng);
        return exact_decode(model, rates, g, rng);
    });
}

OracleResult oracle_eps_oma(const ErrorModel& model, double rate, double rho_hat, double rho_bar,
                            double sigma_z2, double n_d_oma, std::uint64_t samples,
                            std::uint64_t seed, unsigned threads) {
    model.validate();
    const double sz = model.csi == CsiModel::Perfect ? 0.0 : sigma_z2;
    OracleResult r = run_oracle(samples, seed, threads, [&](Rng& rng) {
        const double g = sz > 0.0 ? csi::sample_true_given_estimate(rho_bar, rho_hat, sz, rng) : rho_hat;
        const bool ok = exact_decode_oma(model, rate, g, n_d_oma, rng);
        return channel::Decoded{ok, true};
    });
    return r;
}

}  // namespace errors
}  // namespace nomadelay
