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
#include <iosfwd>
#include <string>
#include <vector>

#include "nomadelay/alloc.hpp"
#include "nomadelay/sim.hpp"
#include "nomadelay/validation.hpp"

namespace nomadelay {

/// Everything one run of the experiment tool needs. Parsed from a flat INI
/// file; SNR keys accept a `_db` suffix.
struct ExperimentConfig {
    ScenarioConfig scenario;
    /// pcsi, pcsi_fbl, icsi or icsi_fbl.
    std::string model = "icsi";
    Decoder decoder = Decoder::Sic;
    double oma_split = 0.5;

    double alpha1 = 560.0;
    double alpha2 = 320.0;
    int w1 = 5;
    int w2 = 5;
    double target_pv1 = 1e-8;
    int w_max = 10;

    int grid_points = 20;
    int rate_candidates = 32;
    int oma_rate_candidates = 256;
    int outer_coarse_points = 7;
    int outer_iterations = 50;

    std::uint64_t sim_slots = 1000000;
    std::uint64_t burn_in = 1000;
    int replications = 16;
    /// exact, exact_nearest, approximate or both (exact and approximate).
    std::string fidelity = "both";

    double sweep_alpha1_min = 0.0;
    double sweep_alpha1_max = 1500.0;
    int sweep_alpha1_steps = 16;
    int sweep_s_points = 6;
    int sweep_lambda_points = 16;
    int sweep_split_points = 19;
    std::string sweep_schemes = "sic,joint,oma";

    int validate_tuples = 20;
    std::uint64_t validate_samples = 1000000;

    std::uint64_t seed = 1;
    unsigned threads = 0;

    /// Scenario with the CSI and coding fidelity selected by `model`.
    ScenarioConfig resolved_scenario() const;
    /// Error model for a NOMA decoder (or OMA) under the configured CSI/coding.
    ErrorModel error_model(Decoder d) const;
    void validate() const;
    /// Canonical INI text of every resolved key.
    std::string to_ini() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

/// CSV schema versions, written as the first comment line of every table.
inline constexpr int kBoundSchema = 1;
inline constexpr int kSweepSchema = 1;
inline constexpr int kValidateSchema = 1;
inline constexpr int kSimSchema = 1;
inline constexpr int kPolicySchema = 1;

struct BoundRow {
    std::string scheme;
    int user = 1;
    int w = 0;
    double bound = 1.0;
    double s_opt = 0.0;
};

struct SweepRow {
    std::string scheme;
    double alpha1_bits = 0.0;
    double max_alpha2_bits = 0.0;
};

struct ValidateRow {
    std::string model;
    double rho_hat1_db = 0.0;
    double rho_hat2_db = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    std::string order;
    double eps_analytic = 0.0;
    double eps_oracle = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
};

struct SimRow {
    std::string fidelity;
    int user = 1;
    int w = 0;
    double pv = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 1.0;
    double bound = 1.0;
    std::string verdict;
};

struct OptimizeResult {
    std::string scheme;
    SnrGrid grid;
    RatePolicy policy;
    DelayBound user1;
    DelayBound user2;
    int iterations = 0;
};

struct SimulateResult {
    std::vector<SimRow> rows;
    std::vector<BoundRow> bounds;
    bool dominated = true;
    bool saturated = false;
};

namespace experiment {

std::string scheme_name(Decoder d);

/// Outer loop for the configured NOMA decoder.
OptimizeResult optimize(const ExperimentConfig& cfg);
std::vector<BoundRow> bound(const ExperimentConfig& cfg);
SimulateResult simulate(const ExperimentConfig& cfg);
std::vector<SweepRow> sweep(const ExperimentConfig& cfg);
std::vector<ValidateRow> validate_eps(const ExperimentConfig& cfg);

/// Delay bound of one OMA user with the policy re-optimized at every s.
DelayBound oma_delay_bound(const alloc::OmaSetup& setup, const ArrivalSpec& arrival, int w,
                           int rate_candidates, const snc::SearchOptions& opts = {});

void write_bound_csv(std::ostream& out, const std::vector<BoundRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_validate_csv(std::ostream& out, const std::vector<ValidateRow>& rows);
void write_sim_csv(std::ostream& out, const std::vector<SimRow>& rows);
void write_policy_csv(std::ostream& out, const OptimizeResult& res);

}  // namespace experiment
}  // namespace nomadelay
