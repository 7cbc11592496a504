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

#include <cstddef>
#include <memory>
#include <vector>

#include "nomadelay/csi.hpp"
#include "nomadelay/errors.hpp"
#include "nomadelay/snc.hpp"

namespace nomadelay {

/// Rates, decoding order and error probabilities chosen at one grid point.
struct PointDecision {
    RatePair rates;
    ErrorPair eps;
};

/// Per-grid-point rate adaptation plus the parameters it was optimized for.
/// lambda weighs user 1 in the Lagrangian M_2 + lambda M_1; for the joint
/// closed form lambda_tilde is its rate-domain image.
struct RatePolicy {
    std::vector<PointDecision> points;
    ErrorModel model;
    double n_d = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double lambda = 0.0;
    double lambda_tilde = 0.0;
};

namespace alloc {

/// Per-user service law of a NOMA policy over the grid.
ServiceSpec service_spec(const SnrGrid& grid, const RatePolicy& policy, int user);

/// sum_i p_i (eps + (1 - eps) exp(-s n_d r)) for one user, evaluated directly.
double policy_mellin(const SnrGrid& grid, const RatePolicy& policy, int user, double s);

// ---- Result 1: SIC under perfect CSI -------------------------------------

struct KnapsackItem {
    double value = 0.0;
    double weight = 0.0;
};

/// Greedy 0-1 knapsack by value-to-weight ratio (ties by index). The first
/// item that does not fit is the split item; it is dropped (x_j = 0) and the
/// scan stops there.
struct KnapsackSolution {
    std::vector<char> selected;
    std::ptrdiff_t split_item = -1;
    double split_fraction = 0.0;
    double value = 0.0;
    double relaxed_value = 0.0;
    double weight = 0.0;
};
KnapsackSolution solve_knapsack(const std::vector<KnapsackItem>& items, double budget);

/// Items of the decoding-order knapsack: choosing corner B (user 1 decoded
/// first) at point i gains value v_i in user 2's Mellin term and costs w_i in
/// user 1's.
struct SicKnapsack {
    std::vector<KnapsackItem> items;
    double m1_all_a = 0.0;  // user-1 Mellin value with corner A everywhere
    double m2_all_a = 0.0;
};
SicKnapsack sic_knapsack(const SnrGrid& grid, double s1, double s2, double n_d);

/// Corner A / B policy for a selection mask (1 = corner B).
RatePolicy sic_policy_from_selection(const SnrGrid& grid, const std::vector<char>& corner_b,
                                     double s1, double s2, double n_d);

/// Result 1 with budget kappa' (user-1 Mellin slack above the all-A value).
/// Throws Infeasible for a negative budget.
RatePolicy optimize_sic_pcsi(const SnrGrid& grid, double s1, double s2, double n_d, double budget,
                             KnapsackSolution* details = nullptr);

// ---- Result 2: joint decoding under perfect CSI --------------------------

/// lambda_tilde = ln(lambda s1 / s2) / ((s1 + s2) n_d).
double lambda_tilde_from_lambda(double lambda, double s1, double s2, double n_d);

RatePolicy optimize_joint_pcsi(const SnrGrid& grid, double s1, double s2, double n_d,
                               double lambda_tilde);

// ---- Unified Lagrangian solvers -----------------------------------------

/// Minimizes M_2(s2) + lambda M_1(s1) pointwise for a fixed model and grid.
class PolicySolver {
  public:
    virtual ~PolicySolver() = default;
    virtual RatePolicy solve(double s1, double s2, double lambda) const = 0;
    virtual const SnrGrid& grid() const = 0;
    virtual const ErrorModel& model() const = 0;
    virtual double n_d() const = 0;
};

struct GridSearchOptions {
    int rate_candidates = 32;
    double backoff_sigmas = 3.0;
    unsigned threads = 0;
};

/// Exhaustive search over an M x M linear rate grid per point, error
/// probabilities precomputed once (they do not depend on s or lambda). SIC
/// models evaluate both decoding orders.
class GridOptimizer : public PolicySolver {
  public:
    GridOptimizer(const ErrorModel& model, const SnrGrid& grid, double n_d,
                  const GridSearchOptions& opts = {});

    RatePolicy solve(double s1, double s2, double lambda) const override;
    const SnrGrid& grid() const override { return grid_; }
    const ErrorModel& model() const override { return model_; }
    double n_d() const override { return n_d_; }

    /// Candidate rates of user k at point i for the given order.
    std::vector<double> rate_axis(std::size_t i, int user, DecodeOrder order) const;

  private:
    struct Table {
        DecodeOrder order;
        std::vector<float> r1;    // [point][M]
        std::vector<float> r2;    // [point][M]
        std::vector<float> eps1;  // [point][M*M], index a*M + b (a: r1 index)
        std::vector<float> eps2;
    };
    ErrorModel model_;
    SnrGrid grid_;
    double n_d_;
    GridSearchOptions opts_;
    std::vector<Table> tables_;
};

/// Closed forms (Results 1 and 2) behind the Lagrangian interface.
class SicPcsiSolver : public PolicySolver {
  public:
    SicPcsiSolver(const SnrGrid& grid, double n_d);
    RatePolicy solve(double s1, double s2, double lambda) const override;
    const SnrGrid& grid() const override { return grid_; }
    const ErrorModel& model() const override { return model_; }
    double n_d() const override { return n_d_; }

  private:
    SnrGrid grid_;
    ErrorModel model_;
    double n_d_;
};

class JointPcsiSolver : public PolicySolver {
  public:
    JointPcsiSolver(const SnrGrid& grid, double n_d);
    RatePolicy solve(double s1, double s2, double lambda) const override;
    const SnrGrid& grid() const override { return grid_; }
    const ErrorModel& model() const override { return model_; }
    double n_d() const override { return n_d_; }

  private:
    SnrGrid grid_;
    ErrorModel model_;
    double n_d_;
};

/// Closed form for perfect CSI with infinite blocklength, grid search otherwise.
std::unique_ptr<PolicySolver> make_solver(const ErrorModel& model, const SnrGrid& grid, double n_d,
                                          const GridSearchOptions& opts = {});

/// Convenience wrapper: one grid-search solve.
RatePolicy optimize_grid(const ErrorModel& model, const SnrGrid& grid, double n_d, double s1,
                         double s2, double lambda, const GridSearchOptions& opts = {});

/// Smallest-lambda policy whose user-1 Mellin value at s1 is <= constraint.
/// Result 1 uses the knapsack budget directly, Result 2 bisects lambda_tilde
/// and grid models bisect log lambda. Throws Infeasible when even the most
/// user-1-favoring policy violates the constraint.
RatePolicy find_lambda(const PolicySolver& solver, double s1, double s2, double constraint);

// ---- Outer (s1, s2, lambda) loop ----------------------------------------

struct OuterOptions {
    int coarse_points = 7;
    double s_min = 1e-4;
    double s_max = 1.0;
    int max_iterations = 50;
    double rel_tolerance = 0.01;
    snc::SearchOptions search;
};

struct OuterResult {
    RatePolicy policy;
    DelayBound user1;
    DelayBound user2;
    int iterations = 0;
};

/// Minimizes user 2's delay bound at w2 subject to user 1's bound at w1 being
/// at most target_pv1. Throws Infeasible when no (s1, s2) admits a policy.
OuterResult outer_loop(const PolicySolver& solver, const ArrivalSpec& arrival1,
                       const ArrivalSpec& arrival2, int w1, int w2, double target_pv1,
                       const OuterOptions& opts = {});

// ---- OMA baseline ---------------------------------------------------------

/// One user transmitting alone: per-point rates on its own estimate axis.
struct OmaPolicy {
    int user = 1;
    GridAxis axis;
    std::vector<double> rate;
    std::vector<double> eps;
    double n_d = 0.0;  // symbols of this user's codeword
    double s = 0.0;
};

struct OmaSetup {
    ErrorModel model;
    GridAxis axis;
    double rho_bar = 0.0;   // full-power average SNR
    double sigma_z2 = 0.0;  // zero under perfect CSI
    double n_d = 0.0;
    int user = 1;
};

/// user k gets split (user 1) or 1 - split (user 2) of the n_d data symbols.
OmaSetup oma_setup(const ScenarioConfig& config, const ErrorModel& model, int user, double split,
                   int points);

/// Minimizes eps + (1 - eps) exp(-s n r) per point; perfect CSI with infinite
/// blocklength gives r = log2(1 + gamma) and eps = 0.
OmaPolicy oma_policy(const OmaSetup& setup, double s, int rate_candidates = 256);

ServiceSpec oma_service(const OmaPolicy& policy);

/// Largest alpha meeting target_pv at deadline w when the policy may be
/// re-optimized for every s.
double oma_max_arrival(const OmaSetup& setup, int w, double target_pv, int rate_candidates = 256,
                       const snc::SearchOptions& opts = {});

}  // namespace alloc
}  // namespace nomadelay
