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

#include "nomadelay/channel.hpp"
#include "nomadelay/csi.hpp"

namespace nomadelay {

enum class Decoder { Sic, Joint, OmaSingleUser };

const char* to_string(Decoder decoder);

/// Selects which error-probability expressions apply. For SIC the decoding
/// order is carried per rate pair (RatePair::order), not by the model.
struct ErrorModel {
    CsiModel csi = CsiModel::Imperfect;
    Coding coding = Coding::InfiniteBlocklength;
    Decoder decoder = Decoder::Sic;
    /// Blocklength in symbols; used only with Coding::FiniteBlocklength.
    int n_d = 200;

    bool finite_blocklength() const { return coding == Coding::FiniteBlocklength; }
    void validate() const;
};

struct ErrorPair {
    double eps1 = 0.0;
    double eps2 = 0.0;

    double eps(int user) const { return user == 1 ? eps1 : eps2; }
};

namespace errors {

/// Gaussian tail P(N(0,1) > x). Exactly 0 / 1 beyond |x| = 38.
double q_function(double x);

/// Inverse of q_function on (0, 1); throws std::domain_error otherwise.
double q_inverse(double p);

/// Q(numerator / scale) with the degenerate scale == 0 resolved as a step
/// (0.5 exactly at numerator == 0).
double q_ratio(double numerator, double scale);

double dispersion_awgn(double gamma);
double dispersion_iid(double gamma);
double dispersion_mac(double gamma1, double gamma2);

enum class Dispersion { Awgn, Iid };

/// Normal-approximation error probability of a single codeword at a known SINR.
double eps_fbl_pcsi(double rate, double sinr, double n_d, Dispersion kind);

/// Spread of the finite-blocklength term mapped to the SNR domain:
/// (1 + gamma) / log2(e) * sqrt(V(gamma) / n_d).
double fbl_sigma(double gamma, double n_d, Dispersion kind);

/// Imperfect-CSI SIC outage approximation. rates.order selects the user that
/// is decoded first; rates.order must not be Joint.
ErrorPair eps_sic_icsi(const RatePair& rates, const EstimatedState& est);

/// Imperfect-CSI joint-decoding union bound; both users share the value.
double eps_joint_icsi(const RatePair& rates, const EstimatedState& est);

/// SIC under imperfect CSI and finite blocklength n_d.
ErrorPair eps_sic_icsi_fbl(const RatePair& rates, const EstimatedState& est, double n_d);

/// Joint decoding under imperfect CSI and finite blocklength n_d.
double eps_joint_icsi_fbl(const RatePair& rates, const EstimatedState& est, double n_d);

/// Single-user (OMA) error probability; n_d_oma <= 0 means infinite blocklength.
double eps_oma(double rate, double rho_hat, double sigma_ic, double n_d_oma);

/// Dispatches to the analytic expression selected by the model. Perfect CSI
/// with infinite blocklength is the exact region indicator.
ErrorPair evaluate(const ErrorModel& model, const RatePair& rates, const EstimatedState& est);

/// OMA counterpart of evaluate() for one user.
double evaluate_oma(const ErrorModel& model, double rate, double rho_hat, double sigma_ic,
                    double n_d_oma);

/// Decoding outcome of one slot of the exact model: true SNRs are given, the
/// finite-blocklength fluctuations (blocklength-equivalent capacities) are
/// drawn fresh from rng.
channel::Decoded exact_decode(const ErrorModel& model, const RatePair& rates, SnrPair gamma,
                              Rng& rng);

/// Exact-model single-user decoding at full power.
bool exact_decode_oma(const ErrorModel& model, double rate, double gamma, double n_d_oma,
                      Rng& rng);

/// Parameters of the exact estimation model around a given estimate.
struct ExactContext {
    double rho_bar1 = 1.0;
    double rho_bar2 = 1.0;
    double sigma_z2_1 = 0.0;
    double sigma_z2_2 = 0.0;
};

struct OracleResult {
    ErrorPair eps;
    Interval ci1;
    Interval ci2;
    std::uint64_t samples = 0;
    std::uint64_t errors1 = 0;
    std::uint64_t errors2 = 0;
};

/// Monte Carlo error frequencies of the exact model conditioned on the
/// estimate (rho_hat1, rho_hat2): the true SNRs follow H = h_hat + Z exactly,
/// and decoding uses exact region membership or blocklength-equivalent
/// capacities. The budget is split into fixed streams, so results depend on
/// (seed, samples) only.
OracleResult oracle_eps(const ErrorModel& model, const RatePair& rates, SnrPair rho_hat,
                        const ExactContext& ctx, std::uint64_t samples, std::uint64_t seed,
                        unsigned threads = 0);

/// Single-user counterpart of oracle_eps for the OMA baseline; result in eps1.
OracleResult oracle_eps_oma(const ErrorModel& model, double rate, double rho_hat, double rho_bar,
                            double sigma_z2, double n_d_oma, std::uint64_t samples,
                            std::uint64_t seed, unsigned threads = 0);

}  // namespace errors
}  // namespace nomadelay
