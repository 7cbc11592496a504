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

#include "nomadelay/alloc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace nomadelay {
namespace alloc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double bits_term(double eps, double s, double bits) { return eps + (1.0 - eps) * std::exp(-s * bits); }

ErrorModel pcsi_model(Decoder decoder) {
    ErrorModel m;
    m.csi = CsiModel::Perfect;
    m.coding = Coding::InfiniteBlocklength;
    m.decoder = decoder;
    return m;
}
}  // namespace

ServiceSpec service_spec(const SnrGrid& grid, const RatePolicy& policy, int user) {
    if (policy.points.size() != grid.size())
        throw std::invalid_argument("policy does not cover the grid");
    ServiceSpec spec;
    spec.atoms.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PointDecision& d = policy.points[i];
        const double r = user == 1 ? d.rates.r1 : d.rates.r2;
        spec.atoms.push_back({grid.mass(i), policy.n_d * r, d.eps.eps(user)});
    }
    return spec;
}

double policy_mellin(const SnrGrid& grid, const RatePolicy& policy, int user, double s) {
    double m = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const PointDecision& d = policy.points[i];
        const double r = user == 1 ? d.rates.r1 : d.rates.r2;
        m += grid.mass(i) * bits_term(d.eps.eps(user), s, policy.n_d * r);
    }
    return m;
}

KnapsackSolution solve_knapsack(const std::vector<KnapsackItem>& items, double budget) {
    KnapsackSolution sol;
    sol.selected.assign(items.size(), 0);
    std::vector<std::size_t> order(items.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto ratio = [&](std::size_t i) {
        const KnapsackItem& it = items[i];
        if (it.weight > 0.0) return it.value / it.weight;
        return it.value > 0.0 ? kInf : 0.0;
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return ratio(a) > ratio(b); });
    double left = budget;
    for (std::size_t i : order) {
        const KnapsackItem& it = items[i];
        if (it.weight <= left) {
            sol.selected[i] = 1;
            left -= it.weight;
            sol.value += it.value;
            sol.weight += it.weight;
            continue;
        }
        sol.split_item = static_cast<std::ptrdiff_t>(i);
        sol.split_fraction = std::max(left, 0.0) / it.weight;
        break;
    }
    sol.relaxed_value = sol.value;
    if (sol.split_item >= 0)
        sol.relaxed_value += sol.split_fraction * items[static_cast<std::size_t>(sol.split_item)].value;
    return sol;
}

SicKnapsack sic_knapsack(const SnrGrid& grid, double s1, double s2, double n_d) {
    SicKnapsack k;
    k.items.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double p = grid.mass(i);
        const channel::Corners c = channel::corner_points(grid.estimate(i));
        // corner A: r1 = R1max, r2 = R2min; corner B: r1 = R1min, r2 = R2max
        const double m1a = std::exp(-s1 * n_d * c.a.r1);
        const double m1b = std::exp(-s1 * n_d * c.b.r1);
        const double m2a = std::exp(-s2 * n_d * c.a.r2);
        const double m2b = std::exp(-s2 * n_d * c.b.r2);
        k.items[i] = {p * (m2a - m2b), p * (m1b - m1a)};
        k.m1_all_a += p * m1a;
        k.m2_all_a += p * m2a;
    }
    return k;
}

RatePolicy sic_policy_from_selection(const SnrGrid& grid, const std::vector<char>& corner_b,
                                     double s1, double s2, double n_d) {
    RatePolicy pol;
    pol.model = pcsi_model(Decoder::Sic);
    pol.n_d = n_d;
    pol.s1 = s1;
    pol.s2 = s2;
    pol.points.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const SnrPair g = grid.estimate(i);
        const channel::Corners c = channel::corner_points(g);
        PointDecision& d = pol.points[i];
        d.rates = corner_b[i] ? c.b : c.a;
        d.eps = errors::evaluate(pol.model, d.rates, grid.state(i));
    }
    return pol;
}

RatePolicy optimize_sic_pcsi(const SnrGrid& grid, double s1, double s2, double n_d, double budget,
                             KnapsackSolution* details) {
    if (!(s1 > 0.0) || !(s2 > 0.0)) throw std::invalid_argument("s1, s2 must be positive");
    if (budget < 0.0)
        throw Infeasible("user-1 Mellin constraint is below the all-corner-A value (budget " +
                         std::to_string(budget) + ")");
    const SicKnapsack k = sic_knapsack(grid, s1, s2, n_d);
    KnapsackSolution sol = solve_knapsack(k.items, budget);
    RatePolicy pol = sic_policy_from_selection(grid, sol.selected, s1, s2, n_d);
    if (sol.split_item >= 0) {
        const KnapsackItem& it = k.items[static_cast<std::size_t>(sol.split_item)];
        pol.lambda = it.weight > 0.0 ? it.value / it.weight : 0.0;
    }
    if (details) *details = std::move(sol);
    return pol;
}

double lambda_tilde_from_lambda(double lambda, double s1, double s2, double n_d) {
    if (!(lambda > 0.0)) return -kInf;
    return std::log(lambda * s1 / s2) / ((s1 + s2) * n_d);
}

RatePolicy optimize_joint_pcsi(const SnrGrid& grid, double s1, double s2, double n_d,
                               double lambda_tilde) {
    if (!(s1 > 0.0) || !(s2 > 0.0)) throw std::invalid_argument("s1, s2 must be positive");
    RatePolicy pol;
    pol.model = pcsi_model(Decoder::Joint);
    pol.n_d = n_d;
    pol.s1 = s1;
    pol.s2 = s2;
    pol.lambda_tilde = lambda_tilde;
    pol.lambda = std::isfinite(lambda_tilde)
                     ? s2 / s1 * std::exp(lambda_tilde * (s1 + s2) * n_d)
                     : (lambda_tilde > 0.0 ? kInf : 0.0);
    pol.points.resize(grid.size());
    const double share = s2 / (s1 + s2);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const SnrPair g = grid.estimate(i);
        const double rs = channel::r_sum(g);
        const double lo = channel::r_min(g.gamma1, g.gamma2);
        const double hi = channel::r_max(g.gamma1);
        const double r1 = std::clamp(share * rs + lambda_tilde, lo, hi);
        PointDecision& d = pol.points[i];
        d.rates = {r1, rs - r1, DecodeOrder::Joint};
        d.eps = errors::evaluate(pol.model, d.rates, grid.state(i));
    }
    return pol;
}

// ---- grid search ----------------------------------------------------------

namespace {
std::vector<DecodeOrder> orders_for(const ErrorModel& model) {
    if (model.decoder == Decoder::Joint) return {DecodeOrder::Joint};
    if (model.decoder == Decoder::Sic) return {DecodeOrder::User1First, DecodeOrder::User2First};
    throw std::invalid_argument("grid optimizer covers NOMA decoders only");
}

double backoff_snr(double rho, double sigma, double k) { return rho + k * sigma; }
}  // namespace

std::vector<double> GridOptimizer::rate_axis(std::size_t i, int user, DecodeOrder order) const {
    const EstimatedState st = grid_.state(i);
    const double k = opts_.backoff_sigmas;
    const int other = 3 - user;
    double snr_hi = backoff_snr(st.rho_hat(user), st.sigma_ic(user), k);
    const bool interfered = (order == DecodeOrder::User1First && user == 1) ||
                            (order == DecodeOrder::User2First && user == 2);
    if (interfered) {
        const double interf_lo = std::max(st.rho_hat(other) - k * st.sigma_ic(other), 0.0);
        snr_hi /= interf_lo + 1.0;
    }
    const double r_hi = std::log2(1.0 + snr_hi);
    const int m = opts_.rate_candidates;
    std::vector<double> axis(static_cast<std::size_t>(m));
    for (int a = 0; a < m; ++a) axis[static_cast<std::size_t>(a)] = r_hi * a / (m - 1);
    return axis;
}

GridOptimizer::GridOptimizer(const ErrorModel& model, const SnrGrid& grid, double n_d,
                             const GridSearchOptions& opts)
    : model_(model), grid_(grid), n_d_(n_d), opts_(opts) {
    model_.validate();
    if (opts_.rate_candidates < 2) throw std::invalid_argument("need >= 2 rate candidates per axis");
    const std::size_t n = grid_.size();
    const auto m = static_cast<std::size_t>(opts_.rate_candidates);
    for (DecodeOrder order : orders_for(model_)) {
        Table t;
        t.order = order;
        t.r1.resize(n * m);
        t.r2.resize(n * m);
        t.eps1.resize(n * m * m);
        t.eps2.resize(n * m * m);
        const std::size_t chunks = std::min<std::size_t>(n, 256);
        parallel_chunks(chunks, opts_.threads, [&](std::size_t c) {
            for (std::size_t i = n * c / chunks; i < n * (c + 1) / chunks; ++i) {
                const EstimatedState st = grid_.state(i);
                const std::vector<double> ax1 = rate_axis(i, 1, order);
                const std::vector<double> ax2 = rate_axis(i, 2, order);
                for (std::size_t a = 0; a < m; ++a) {
                    t.r1[i * m + a] = static_cast<float>(ax1[a]);
                    t.r2[i * m + a] = static_cast<float>(ax2[a]);
                }
                for (std::size_t a = 0; a < m; ++a) {
                    for (std::size_t b = 0; b < m; ++b) {
                        const RatePair rp{static_cast<double>(t.r1[i * m + a]),
                                          static_cast<double>(t.r2[i * m + b]), order};
                        const ErrorPair e = errors::evaluate(model_, rp, st);
                        t.eps1[(i * m + a) * m + b] = static_cast<float>(e.eps1);
                        t.eps2[(i * m + a) * m + b] = static_cast<float>(e.eps2);
                    }
                }
            }
        });
        tables_.push_back(std::move(t));
    }
}

RatePolicy GridOptimizer::solve(double s1, double s2, double lambda) const {
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    const std::size_t n = grid_.size();
    const auto m = static_cast<std::size_t>(opts_.rate_candidates);
    RatePolicy pol;
    pol.model = model_;
    pol.n_d = n_d_;
    pol.s1 = s1;
    pol.s2 = s2;
    pol.lambda = lambda;
    pol.points.resize(n);
    const std::size_t chunks = std::min<std::size_t>(n, 64);
    parallel_chunks(chunks, opts_.threads, [&](std::size_t c) {
        std::vector<double> e1(m), e2(m);
        for (std::size_t i = n * c / chunks; i < n * (c + 1) / chunks; ++i) {
            double best = kInf;
            RatePair best_rates;
            for (const Table& t : tables_) {
                for (std::size_t a = 0; a < m; ++a) {
                    e1[a] = std::exp(-s1 * n_d_ * t.r1[i * m + a]);
                    e2[a] = std::exp(-s2 * n_d_ * t.r2[i * m + a]);
                }
                for (std::size_t a = 0; a < m; ++a) {
                    const float* p1 = &t.eps1[(i * m + a) * m];
                    const float* p2 = &t.eps2[(i * m + a) * m];
                    for (std::size_t b = 0; b < m; ++b) {
                        const double q1 = p1[b];
                        const double q2 = p2[b];
                        const double cost =
                            q2 + (1.0 - q2) * e2[b] + lambda * (q1 + (1.0 - q1) * e1[a]);
                        if (cost < best) {
                            best = cost;
                            best_rates = {t.r1[i * m + a], t.r2[i * m + b], t.order};
                        }
                    }
                }
            }
            pol.points[i].rates = best_rates;
            pol.points[i].eps = errors::evaluate(model_, best_rates, grid_.state(i));
        }
    });
    return pol;
}

SicPcsiSolver::SicPcsiSolver(const SnrGrid& grid, double n_d)
    : grid_(grid), model_(pcsi_model(Decoder::Sic)), n_d_(n_d) {}

RatePolicy SicPcsiSolver::solve(double s1, double s2, double lambda) const {
    const SicKnapsack k = sic_knapsack(grid_, s1, s2, n_d_);
    std::vector<char> sel(grid_.size(), 0);
    for (std::size_t i = 0; i < sel.size(); ++i) {
        const KnapsackItem& it = k.items[i];
        sel[i] = it.value > lambda * it.weight ? 1 : 0;
    }
    RatePolicy pol = sic_policy_from_selection(grid_, sel, s1, s2, n_d_);
    pol.lambda = lambda;
    return pol;
}

JointPcsiSolver::JointPcsiSolver(const SnrGrid& grid, double n_d)
    : grid_(grid), model_(pcsi_model(Decoder::Joint)), n_d_(n_d) {}

RatePolicy JointPcsiSolver::solve(double s1, double s2, double lambda) const {
    return optimize_joint_pcsi(grid_, s1, s2, n_d_, lambda_tilde_from_lambda(lambda, s1, s2, n_d_));
}

std::unique_ptr<PolicySolver> make_solver(const ErrorModel& model, const SnrGrid& grid, double n_d,
                                          const GridSearchOptions& opts) {
    if (model.csi == CsiModel::Perfect && !model.finite_blocklength()) {
        if (model.decoder == Decoder::Sic) return std::make_unique<SicPcsiSolver>(grid, n_d);
        if (model.decoder == Decoder::Joint) return std::make_unique<JointPcsiSolver>(grid, n_d);
    }
    return std::make_unique<GridOptimizer>(model, grid, n_d, opts);
}

RatePolicy optimize_grid(const ErrorModel& model, const SnrGrid& grid, double n_d, double s1,
                         double s2, double lambda, const GridSearchOptions& opts) {
    return GridOptimizer(model, grid, n_d, opts).solve(s1, s2, lambda);
}

// ---- constrained solve ------------------------------------------------------

namespace {
[[noreturn]] void throw_infeasible(double best, double constraint) {
    throw Infeasible("user-1 Mellin constraint " + std::to_string(constraint) +
                     " is below the most favorable achievable value " + std::to_string(best));
}

RatePolicy find_lambda_joint(const JointPcsiSolver& solver, double s1, double s2,
                             double constraint) {
    const SnrGrid& grid = solver.grid();
    double max_rs = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        max_rs = std::max(max_rs, channel::r_sum(grid.estimate(i)));
    double lo = -max_rs - 1.0;
    double hi = max_rs + 1.0;
    auto run = [&](double lt) { return optimize_joint_pcsi(grid, s1, s2, solver.n_d(), lt); };
    RatePolicy best = run(hi);
    const double m_hi = policy_mellin(grid, best, 1, s1);
    if (m_hi > constraint) throw_infeasible(m_hi, constraint);
    RatePolicy at_lo = run(lo);
    if (policy_mellin(grid, at_lo, 1, s1) <= constraint) return at_lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        RatePolicy p = run(mid);
        const double m1 = policy_mellin(grid, p, 1, s1);
        if (m1 <= constraint) {
            hi = mid;
            best = std::move(p);
            if (constraint - m1 <= 1e-6 * constraint) break;
        } else {
            lo = mid;
        }
        if (hi - lo <= 1e-15 * (1.0 + std::abs(hi))) break;
    }
    return best;
}
}  // namespace

RatePolicy find_lambda(const PolicySolver& solver, double s1, double s2, double constraint) {
    const SnrGrid& grid = solver.grid();
    if (const auto* sic = dynamic_cast<const SicPcsiSolver*>(&solver)) {
        const SicKnapsack k = sic_knapsack(grid, s1, s2, sic->n_d());
        const double budget = constraint - k.m1_all_a;
        if (budget < 0.0) throw_infeasible(k.m1_all_a, constraint);
        return optimize_sic_pcsi(grid, s1, s2, sic->n_d(), budget);
    }
    if (const auto* joint = dynamic_cast<const JointPcsiSolver*>(&solver))
        return find_lambda_joint(*joint, s1, s2, constraint);

    RatePolicy at_zero = solver.solve(s1, s2, 0.0);
    if (policy_mellin(grid, at_zero, 1, s1) <= constraint) return at_zero;
    double hi = 1.0;
    RatePolicy best = solver.solve(s1, s2, hi);
    double m_hi = policy_mellin(grid, best, 1, s1);
    while (m_hi > constraint && hi < 1e15) {
        hi *= 10.0;
        best = solver.solve(s1, s2, hi);
        m_hi = policy_mellin(grid, best, 1, s1);
    }
    if (m_hi > constraint) throw_infeasible(m_hi, constraint);
    double lo = hi / 10.0;
    if (hi == 1.0) lo = 1e-15;
    for (int it = 0; it < 60 && hi / lo > 1.0 + 1e-6; ++it) {
        const double mid = std::sqrt(lo * hi);
        RatePolicy p = solver.solve(s1, s2, mid);
        const double m1 = policy_mellin(grid, p, 1, s1);
        if (m1 <= constraint) {
            hi = mid;
            best = std::move(p);
            if (constraint - m1 <= 1e-6 * constraint) break;
        } else {
            lo = mid;
        }
    }
    return best;
}

// ---- outer loop -------------------------------------------------------------

OuterResult outer_loop(const PolicySolver& solver, const ArrivalSpec& arrival1,
                       const ArrivalSpec& arrival2, int w1, int w2, double target_pv1,
                       const OuterOptions& opts) {
    arrival1.validate();
    arrival2.validate();
    const bool unconstrained = target_pv1 >= 1.0;
    const SnrGrid& grid = solver.grid();
    struct Eval {
        double value = kInf;
        RatePolicy policy;
        DelayBound bound2;
    };
    std::map<std::pair<long long, long long>, double> seen;
    Eval best;
    // Coordinates live on a log-s lattice of step h / 2^k; keys avoid
    // re-solving revisited points.
    auto evaluate = [&](double x1, double x2) {
        const auto key = std::make_pair(std::llround(x1 * 1e9), std::llround(x2 * 1e9));
        if (auto it = seen.find(key); it != seen.end()) return it->second;
        const double s1 = std::exp(x1);
        const double s2 = std::exp(x2);
        double value = kInf;
        try {
            RatePolicy pol;
            if (unconstrained) {
                pol = solver.solve(s1, s2, 0.0);
            } else {
                const double cons =
                    snc::max_service_mellin(snc::mellin_arrival(arrival1, s1), w1, target_pv1);
                if (!(cons > 0.0)) throw Infeasible("no service meets the user-1 target");
                pol = find_lambda(solver, s1, s2, cons);
            }
            const DelayBound b2 = snc::delay_bound(arrival2, service_spec(grid, pol, 2), w2, opts.search);
            value = b2.bound;
            if (value < best.value) best = {value, std::move(pol), b2};
        } catch (const Infeasible&) {
        } catch (const Unstable&) {
        }
        seen.emplace(key, value);
        return value;
    };

    const double lo = std::log(opts.s_min);
    const double hi = std::log(opts.s_max);
    const int n = std::max(opts.coarse_points, 2);
    const double h = (hi - lo) / (n - 1);
    double bx1 = lo, bx2 = lo, bv = kInf;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const double x1 = lo + h * a;
            const double x2 = lo + h * b;
            const double v = evaluate(x1, x2);
            if (v < bv) {
                bv = v;
                bx1 = x1;
                bx2 = x2;
            }
        }
    }
    if (!std::isfinite(bv))
        throw Infeasible("no (s1, s2) on the search grid admits a policy meeting the user-1 target");

    int iterations = 0;
    double step = h;
    while (iterations < opts.max_iterations && step > 1e-3) {
        ++iterations;
        const double start = bv;
        bool moved = false;
        for (int coord = 0; coord < 2; ++coord) {
            for (double dir : {-1.0, 1.0}) {
                const double x1 = coord == 0 ? bx1 + dir * step : bx1;
                const double x2 = coord == 1 ? bx2 + dir * step : bx2;
                const double v = evaluate(x1, x2);
                if (v < bv) {
                    bv = v;
                    bx1 = x1;
                    bx2 = x2;
                    moved = true;
                }
            }
        }
        if (!moved) {
            step *= 0.5;
            continue;
        }
        if (start - bv < opts.rel_tolerance * start && step < h * 0.26) break;
    }

    OuterResult res;
    res.policy = std::move(best.policy);
    res.user2 = best.bound2;
    res.iterations = iterations;
    try {
        res.user1 = snc::delay_bound(arrival1, service_spec(grid, res.policy, 1), w1, opts.search);
    } catch (const Unstable&) {
        res.user1 = {w1, 1.0, 0.0, false};
    }
    return res;
}

// ---- OMA ----------------------------------------------------------------------

OmaSetup oma_setup(const ScenarioConfig& config, const ErrorModel& model, int user, double split,
                   int points) {
    if (!(split > 0.0 && split < 1.0)) throw std::invalid_argument("OMA split must lie in (0, 1)");
    OmaSetup s;
    s.model = model;
    s.model.decoder = Decoder::OmaSingleUser;
    s.axis = csi::build_oma_axis(config, user, points);
    s.rho_bar = config.snr.rho_oma(user);
    s.sigma_z2 = model.csi == CsiModel::Perfect ? 0.0 : config.sigma_z2(user);
    s.n_d = config.n_data() * (user == 1 ? split : 1.0 - split);
    s.user = user;
    return s;
}

OmaPolicy oma_policy(const OmaSetup& setup, double s, int rate_candidates) {
    if (rate_candidates < 2) throw std::invalid_argument("need >= 2 rate candidates");
    OmaPolicy pol;
    pol.user = setup.user;
    pol.axis = setup.axis;
    pol.n_d = setup.n_d;
    pol.s = s;
    const std::size_t n = setup.axis.size();
    pol.rate.resize(n);
    pol.eps.resize(n);
    const bool closed = setup.model.csi == CsiModel::Perfect && !setup.model.finite_blocklength();
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = setup.axis.value[i];
        if (closed) {
            pol.rate[i] = std::log2(1.0 + rho);
            pol.eps[i] = 0.0;
            continue;
        }
        const double sigma = csi::icsi_stddev(setup.rho_bar, rho, setup.sigma_z2);
        const double r_hi = std::log2(1.0 + rho + 3.0 * sigma);
        double best = kInf;
        for (int a = 0; a < rate_candidates; ++a) {
            const double r = r_hi * a / (rate_candidates - 1);
            const double e = errors::evaluate_oma(setup.model, r, rho, sigma, setup.n_d);
            const double cost = bits_term(e, s, setup.n_d * r);
            if (cost < best) {
                best = cost;
                pol.rate[i] = r;
                pol.eps[i] = e;
            }
        }
    }
    return pol;
}

ServiceSpec oma_service(const OmaPolicy& policy) {
    ServiceSpec spec;
    for (std::size_t i = 0; i < policy.rate.size(); ++i)
        spec.atoms.push_back({policy.axis.mass[i], policy.n_d * policy.rate[i], policy.eps[i]});
    return spec;
}

double oma_max_arrival(const OmaSetup& setup, int w, double target_pv, int rate_candidates,
                       const snc::SearchOptions& opts) {
    const double lo = std::log(opts.s_min);
    const double hi = std::log(opts.s_max);
    auto alpha_at = [&](double x) {
        const double s = std::exp(x);
        const ServiceSpec spec = oma_service(oma_policy(setup, s, rate_candidates));
        return snc::max_arrival_at(snc::mellin_service(spec, s), s, w, target_pv);
    };
    double best = -kInf;
    double bx = lo;
    const int n = opts.coarse_points;
    for (int k = 0; k < n; ++k) {
        const double x = lo + (hi - lo) * k / (n - 1);
        const double v = alpha_at(x);
        if (v > best) {
            best = v;
            bx = x;
        }
    }
    double step = (hi - lo) / (n - 1);
    while (step > 1e-4) {
        bool moved = false;
        for (double dir : {-1.0, 1.0}) {
            const double x = std::clamp(bx + dir * step, lo, hi);
            const double v = alpha_at(x);
            if (v > best) {
                best = v;
                bx = x;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    if (!(best > 0.0)) return 0.0;
    return std::floor(best * 10.0) / 10.0;
}

}  // namespace alloc
}  // namespace nomadelay
