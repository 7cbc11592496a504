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

#include "nomadelay/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace nomadelay {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Decoder parse_decoder(const std::string& s) {
    if (s == "sic") return Decoder::Sic;
    if (s == "joint") return Decoder::Joint;
    if (s == "oma") return Decoder::OmaSingleUser;
    throw std::invalid_argument("unknown decoder '" + s + "' (expected sic, joint or oma)");
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    std::istringstream is(text);
    T v{};
    is >> v;
    if (!is || !(is >> std::ws).eof())
        throw std::invalid_argument("config key " + key + ": cannot parse '" + text + "'");
    return v;
}
}  // namespace

ScenarioConfig ExperimentConfig::resolved_scenario() const {
    ScenarioConfig sc = scenario;
    sc.csi = model.rfind("pcsi", 0) == 0 ? CsiModel::Perfect : CsiModel::Imperfect;
    sc.coding = model.size() > 4 && model.substr(model.size() - 4) == "_fbl" ? Coding::FiniteBlocklength
                                                                             : Coding::InfiniteBlocklength;
    return sc;
}

ErrorModel ExperimentConfig::error_model(Decoder d) const {
    const ScenarioConfig sc = resolved_scenario();
    ErrorModel m;
    m.csi = sc.csi;
    m.coding = sc.coding;
    m.decoder = d;
    m.n_d = sc.n_data();
    return m;
}

void ExperimentConfig::validate() const {
    scenario.validate();
    if (model != "pcsi" && model != "pcsi_fbl" && model != "icsi" && model != "icsi_fbl")
        throw std::invalid_argument("unknown model '" + model +
                                    "' (expected pcsi, pcsi_fbl, icsi or icsi_fbl)");
    if (!(oma_split > 0.0 && oma_split < 1.0)) throw std::invalid_argument("oma_split must lie in (0, 1)");
    ArrivalSpec{alpha1}.validate();
    ArrivalSpec{alpha2}.validate();
    if (w1 < 0 || w2 < 0 || w_max < 1) throw std::invalid_argument("deadlines must be >= 0, w_max >= 1");
    if (!(target_pv1 > 0.0)) throw std::invalid_argument("target_pv1 must be positive");
    if (grid_points < 2) throw std::invalid_argument("grid_points must be >= 2");
    if (rate_candidates < 2 || oma_rate_candidates < 2)
        throw std::invalid_argument("rate_candidates must be >= 2");
    if (outer_coarse_points < 2 || outer_iterations < 0)
        throw std::invalid_argument("outer loop settings out of range");
    if (sim_slots < 1 || replications < 1) throw std::invalid_argument("sim slots/replications must be >= 1");
    if (fidelity != "exact" && fidelity != "exact_nearest" && fidelity != "approximate" &&
        fidelity != "both")
        throw std::invalid_argument("unknown fidelity '" + fidelity + "'");
    if (sweep_alpha1_steps < 1 || sweep_alpha1_max < sweep_alpha1_min || sweep_alpha1_min < 0.0)
        throw std::invalid_argument("sweep alpha1 range invalid");
    if (sweep_s_points < 1 || sweep_lambda_points < 1 || sweep_split_points < 1)
        throw std::invalid_argument("sweep resolution must be >= 1");
    std::stringstream ss(sweep_schemes);
    for (std::string item; std::getline(ss, item, ',');) parse_decoder(item);
    if (validate_tuples < 0 || validate_samples < 1) throw std::invalid_argument("validate settings invalid");
}

std::string ExperimentConfig::to_ini() const {
    std::ostringstream o;
    o << "[scenario]\n"
      << "rho_oma1_db = " << fmt(to_db(scenario.snr.rho_oma1)) << "\n"
      << "rho_oma2_db = " << fmt(to_db(scenario.snr.rho_oma2)) << "\n"
      << "beta1 = " << fmt(scenario.snr.beta1) << "\n"
      << "n_total = " << scenario.n_total << "\n"
      << "n_tr1 = " << scenario.n_tr1 << "\n"
      << "n_tr2 = " << scenario.n_tr2 << "\n"
      << "[model]\n"
      << "model = " << model << "\n"
      << "decoder = " << to_string(decoder) << "\n"
      << "oma_split = " << fmt(oma_split) << "\n"
      << "[traffic]\n"
      << "alpha1 = " << fmt(alpha1) << "\n"
      << "alpha2 = " << fmt(alpha2) << "\n"
      << "w1 = " << w1 << "\n"
      << "w2 = " << w2 << "\n"
      << "target_pv1 = " << fmt(target_pv1) << "\n"
      << "w_max = " << w_max << "\n"
      << "[numerics]\n"
      << "grid_points = " << grid_points << "\n"
      << "rate_candidates = " << rate_candidates << "\n"
      << "oma_rate_candidates = " << oma_rate_candidates << "\n"
      << "outer_coarse_points = " << outer_coarse_points << "\n"
      << "outer_iterations = " << outer_iterations << "\n"
      << "[sim]\n"
      << "slots = " << sim_slots << "\n"
      << "burn_in = " << burn_in << "\n"
      << "replications = " << replications << "\n"
      << "fidelity = " << fidelity << "\n"
      << "[sweep]\n"
      << "alpha1_min = " << fmt(sweep_alpha1_min) << "\n"
      << "alpha1_max = " << fmt(sweep_alpha1_max) << "\n"
      << "alpha1_steps = " << sweep_alpha1_steps << "\n"
      << "s_points = " << sweep_s_points << "\n"
      << "lambda_points = " << sweep_lambda_points << "\n"
      << "split_points = " << sweep_split_points << "\n"
      << "schemes = " << sweep_schemes << "\n"
      << "[validate]\n"
      << "tuples = " << validate_tuples << "\n"
      << "samples = " << validate_samples << "\n"
      << "[run]\n"
      << "seed = " << seed << "\n"
      << "threads = " << threads << "\n";
    return o.str();
}

ExperimentConfig parse_config(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    ExperimentConfig c;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    auto dbl = [](double& t) { return Setter([&t](auto& k, auto& v) { t = parse_number<double>(k, v); }); };
    auto dbl_db = [](double& t) {
        return Setter([&t](auto& k, auto& v) { t = from_db(parse_number<double>(k, v)); });
    };
    auto integer = [](int& t) { return Setter([&t](auto& k, auto& v) { t = parse_number<int>(k, v); }); };
    auto u64 = [](std::uint64_t& t) {
        return Setter([&t](auto& k, auto& v) {
            if (!v.empty() && v[0] == '-') throw std::invalid_argument("config key " + k + " must be >= 0");
            t = static_cast<std::uint64_t>(parse_number<double>(k, v));
        });
    };
    auto text = [](std::string& t) { return Setter([&t](auto&, auto& v) { t = v; }); };
    double beta1 = c.scenario.snr.beta1;
    std::string decoder = to_string(c.decoder);
    const std::map<std::string, Setter> setters = {
        {"scenario.rho_oma1_db", dbl_db(c.scenario.snr.rho_oma1)},
        {"scenario.rho_oma2_db", dbl_db(c.scenario.snr.rho_oma2)},
        {"scenario.rho_oma1", dbl(c.scenario.snr.rho_oma1)},
        {"scenario.rho_oma2", dbl(c.scenario.snr.rho_oma2)},
        {"scenario.beta1", dbl(beta1)},
        {"scenario.n_total", integer(c.scenario.n_total)},
        {"scenario.n_tr1", integer(c.scenario.n_tr1)},
        {"scenario.n_tr2", integer(c.scenario.n_tr2)},
        {"model.model", text(c.model)},
        {"model.decoder", text(decoder)},
        {"model.oma_split", dbl(c.oma_split)},
        {"traffic.alpha1", dbl(c.alpha1)},
        {"traffic.alpha2", dbl(c.alpha2)},
        {"traffic.w1", integer(c.w1)},
        {"traffic.w2", integer(c.w2)},
        {"traffic.target_pv1", dbl(c.target_pv1)},
        {"traffic.w_max", integer(c.w_max)},
        {"numerics.grid_points", integer(c.grid_points)},
        {"numerics.rate_candidates", integer(c.rate_candidates)},
        {"numerics.oma_rate_candidates", integer(c.oma_rate_candidates)},
        {"numerics.outer_coarse_points", integer(c.outer_coarse_points)},
        {"numerics.outer_iterations", integer(c.outer_iterations)},
        {"sim.slots", u64(c.sim_slots)},
        {"sim.burn_in", u64(c.burn_in)},
        {"sim.replications", integer(c.replications)},
        {"sim.fidelity", text(c.fidelity)},
        {"sweep.alpha1_min", dbl(c.sweep_alpha1_min)},
        {"sweep.alpha1_max", dbl(c.sweep_alpha1_max)},
        {"sweep.alpha1_steps", integer(c.sweep_alpha1_steps)},
        {"sweep.s_points", integer(c.sweep_s_points)},
        {"sweep.lambda_points", integer(c.sweep_lambda_points)},
        {"sweep.split_points", integer(c.sweep_split_points)},
        {"sweep.schemes", text(c.sweep_schemes)},
        {"validate.tuples", integer(c.validate_tuples)},
        {"validate.samples", u64(c.validate_samples)},
        {"run.seed", u64(c.seed)},
        {"run.threads", Setter([&c](auto& k, auto& v) {
             c.threads = static_cast<unsigned>(parse_number<int>(k, v));
         })},
    };
    for (const auto& [section, body] : tree) {
        if (body.empty() && !body.data().empty())
            throw std::invalid_argument("config: key '" + section + "' outside a section");
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            auto it = setters.find(full);
            if (it == setters.end()) throw std::invalid_argument("config: unknown key '" + full + "'");
            it->second(full, value.data());
        }
    }
    c.scenario.snr.beta1 = beta1;
    c.scenario.snr.beta2 = 1.0 - beta1;
    c.decoder = parse_decoder(decoder);
    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    return parse_config(in);
}

namespace experiment {

std::string scheme_name(Decoder d) {
    switch (d) {
        case Decoder::Sic:
            return "noma_sic";
        case Decoder::Joint:
            return "noma_joint";
        case Decoder::OmaSingleUser:
            return "oma";
    }
    return "?";
}

namespace {
alloc::OuterOptions outer_options(const ExperimentConfig& cfg) {
    alloc::OuterOptions o;
    o.coarse_points = cfg.outer_coarse_points;
    o.max_iterations = cfg.outer_iterations;
    return o;
}

alloc::GridSearchOptions grid_options(const ExperimentConfig& cfg) {
    alloc::GridSearchOptions g;
    g.rate_candidates = cfg.rate_candidates;
    g.threads = cfg.threads;
    return g;
}

std::vector<double> log_space(double lo, double hi, int n) {
    std::vector<double> v;
    if (n == 1) return {std::sqrt(lo * hi)};
    for (int k = 0; k < n; ++k) v.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * k / (n - 1)));
    return v;
}

std::vector<double> alpha1_axis(const ExperimentConfig& cfg) {
    std::vector<double> v;
    const int n = cfg.sweep_alpha1_steps;
    for (int k = 0; k < n; ++k)
        v.push_back(n == 1 ? cfg.sweep_alpha1_min
                           : cfg.sweep_alpha1_min + (cfg.sweep_alpha1_max - cfg.sweep_alpha1_min) * k / (n - 1));
    return v;
}

struct FrontierPoint {
    double a1 = 0.0;
    double a2 = 0.0;
};

// Upper envelope: best a2 among points supporting at least alpha1 for user 1.
double envelope(const std::vector<FrontierPoint>& pts, double alpha1) {
    double best = 0.0;
    for (const auto& p : pts)
        if (p.a1 >= alpha1) best = std::max(best, p.a2);
    return best;
}

double expected_bits(const ServiceSpec& s) {
    double e = 0.0;
    for (const auto& a : s.atoms) e += a.mass * a.bits * (1.0 - a.eps);
    return e;
}

void append_rows(std::vector<SweepRow>& rows, const std::string& scheme,
                 const std::vector<FrontierPoint>& pts, const std::vector<double>& alphas) {
    for (double a : alphas) rows.push_back({scheme, a, envelope(pts, a)});
}

constexpr double kErgodicS = 1e-7;
}  // namespace

OptimizeResult optimize(const ExperimentConfig& in) {
    // The model key selects the CSI and coding fidelity of the scenario.
    ExperimentConfig cfg = in;
    cfg.scenario = in.resolved_scenario();
    if (cfg.decoder == Decoder::OmaSingleUser)
        throw std::invalid_argument("optimize covers the NOMA decoders (sic, joint); OMA is per user");
    OptimizeResult res;
    res.scheme = scheme_name(cfg.decoder);
    res.grid = csi::build_grid(cfg.scenario, cfg.grid_points);
    const ErrorModel model = cfg.error_model(cfg.decoder);
    auto solver = alloc::make_solver(model, res.grid, cfg.scenario.n_data(), grid_options(cfg));
    alloc::OuterResult o = alloc::outer_loop(*solver, {cfg.alpha1}, {cfg.alpha2}, cfg.w1, cfg.w2,
                                             cfg.target_pv1, outer_options(cfg));
    res.policy = std::move(o.policy);
    res.user1 = o.user1;
    res.user2 = o.user2;
    res.iterations = o.iterations;
    return res;
}

DelayBound oma_delay_bound(const alloc::OmaSetup& setup, const ArrivalSpec& arrival, int w,
                           int rate_candidates, const snc::SearchOptions& opts) {
    auto value = [&](double x) {
        const double s = std::exp(x);
        const ServiceSpec spec = alloc::oma_service(alloc::oma_policy(setup, s, rate_candidates));
        const double ma = snc::mellin_arrival(arrival, s);
        const double ms = snc::mellin_service(spec, s);
        return snc::stability(ma, ms) ? snc::kernel(ma, ms, w) : kInf;
    };
    const double lo = std::log(opts.s_min);
    const double hi = std::log(opts.s_max);
    const int n = opts.coarse_points;
    double bx = lo, bv = kInf;
    for (int k = 0; k < n; ++k) {
        const double x = lo + (hi - lo) * k / (n - 1);
        const double v = value(x);
        if (v < bv) {
            bv = v;
            bx = x;
        }
    }
    if (!std::isfinite(bv)) return {w, 1.0, 0.0, false};
    double step = (hi - lo) / (n - 1);
    while (step > 1e-4) {
        bool moved = false;
        for (double dir : {-1.0, 1.0}) {
            const double v = value(bx + dir * step);
            if (v < bv) {
                bv = v;
                bx += dir * step;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
    return {w, bv, std::exp(bx), true};
}

std::vector<BoundRow> bound(const ExperimentConfig& in) {
    ExperimentConfig cfg = in;
    cfg.scenario = in.resolved_scenario();
    std::vector<BoundRow> rows;
    const std::string scheme = scheme_name(cfg.decoder);
    if (cfg.decoder == Decoder::OmaSingleUser) {
        const ErrorModel model = cfg.error_model(Decoder::OmaSingleUser);
        for (int user = 1; user <= 2; ++user) {
            const alloc::OmaSetup setup =
                alloc::oma_setup(cfg.scenario, model, user, cfg.oma_split, cfg.grid_points);
            const ArrivalSpec a{user == 1 ? cfg.alpha1 : cfg.alpha2};
            for (int w = 1; w <= cfg.w_max; ++w) {
                const DelayBound b = oma_delay_bound(setup, a, w, cfg.oma_rate_candidates);
                rows.push_back({scheme, user, w, b.bound, b.s_opt});
            }
        }
        return rows;
    }
    const OptimizeResult res = optimize(cfg);
    for (int user = 1; user <= 2; ++user) {
        const ArrivalSpec a{user == 1 ? cfg.alpha1 : cfg.alpha2};
        for (const DelayBound& b :
             snc::delay_bounds(a, alloc::service_spec(res.grid, res.policy, user), cfg.w_max))
            rows.push_back({scheme, user, b.w, b.bound, b.s_opt});
    }
    return rows;
}

SimulateResult simulate(const ExperimentConfig& in) {
    ExperimentConfig cfg = in;
    cfg.scenario = in.resolved_scenario();
    const OptimizeResult res = optimize(cfg);
    SimulateResult out;
    std::vector<DelayBound> bounds[2];
    for (int user = 1; user <= 2; ++user) {
        const ArrivalSpec a{user == 1 ? cfg.alpha1 : cfg.alpha2};
        bounds[user - 1] =
            snc::delay_bounds(a, alloc::service_spec(res.grid, res.policy, user), cfg.w_max);
        for (const DelayBound& b : bounds[user - 1])
            out.bounds.push_back({res.scheme, user, b.w, b.bound, b.s_opt});
    }
    std::vector<Fidelity> fids;
    if (cfg.fidelity == "both") fids = {Fidelity::Exact, Fidelity::Approximate};
    else if (cfg.fidelity == "exact") fids = {Fidelity::Exact};
    else if (cfg.fidelity == "exact_nearest") fids = {Fidelity::ExactNearest};
    else fids = {Fidelity::Approximate};
    for (Fidelity f : fids) {
        SimOptions so;
        so.fidelity = f;
        so.slots = cfg.sim_slots;
        so.seed = cfg.seed;
        so.threads = cfg.threads;
        so.burn_in = cfg.burn_in;
        so.w_max = cfg.w_max;
        so.replications = cfg.replications;
        const SimReport rep = sim::simulate(res.grid, res.policy, {cfg.alpha1}, {cfg.alpha2}, so);
        for (int user = 1; user <= 2; ++user) {
            const sim::Dominance d = sim::compare(rep.user[user - 1], bounds[user - 1]);
            out.dominated = out.dominated && d.dominated;
            out.saturated = out.saturated || rep.user[user - 1].saturated;
            for (const sim::CompareRow& r : d.rows)
                out.rows.push_back({to_string(f), user, r.w, r.pv, r.ci_lo, r.ci_hi, r.bound,
                                    sim::to_string(r.verdict)});
        }
    }
    return out;
}

std::vector<SweepRow> sweep(const ExperimentConfig& in) {
    ExperimentConfig cfg = in;
    cfg.scenario = in.resolved_scenario();
    std::vector<SweepRow> rows;
    const std::vector<double> alphas = alpha1_axis(cfg);
    const double target = cfg.target_pv1;
    if (!(target < 1.0)) throw std::invalid_argument("sweep needs target_pv1 < 1");
    std::stringstream ss(cfg.sweep_schemes);
    std::vector<Decoder> schemes;
    for (std::string item; std::getline(ss, item, ',');) schemes.push_back(parse_decoder(item));

    for (Decoder d : schemes) {
        std::vector<FrontierPoint> pts, ergodic;
        if (d == Decoder::OmaSingleUser) {
            const ErrorModel model = cfg.error_model(d);
            const int n = cfg.sweep_split_points;
            for (int k = 1; k <= n; ++k) {
                const double split = static_cast<double>(k) / (n + 1);
                const alloc::OmaSetup s1 = alloc::oma_setup(cfg.scenario, model, 1, split, cfg.grid_points);
                const alloc::OmaSetup s2 = alloc::oma_setup(cfg.scenario, model, 2, split, cfg.grid_points);
                pts.push_back({alloc::oma_max_arrival(s1, cfg.w1, target, cfg.oma_rate_candidates),
                               alloc::oma_max_arrival(s2, cfg.w2, target, cfg.oma_rate_candidates)});
                ergodic.push_back(
                    {expected_bits(alloc::oma_service(alloc::oma_policy(s1, kErgodicS, cfg.oma_rate_candidates))),
                     expected_bits(alloc::oma_service(alloc::oma_policy(s2, kErgodicS, cfg.oma_rate_candidates)))});
            }
        } else {
            const SnrGrid grid = csi::build_grid(cfg.scenario, cfg.grid_points);
            auto solver = alloc::make_solver(cfg.error_model(d), grid, cfg.scenario.n_data(), grid_options(cfg));
            std::vector<double> lambdas = log_space(1e-8, 1e8, cfg.sweep_lambda_points);
            lambdas.insert(lambdas.begin(), 0.0);
            for (double s1 : log_space(1e-4, 1.0, cfg.sweep_s_points)) {
                for (double s2 : log_space(1e-4, 1.0, cfg.sweep_s_points)) {
                    for (double lam : lambdas) {
                        const RatePolicy pol = solver->solve(s1, s2, lam);
                        const ServiceSpec sv1 = alloc::service_spec(grid, pol, 1);
                        const ServiceSpec sv2 = alloc::service_spec(grid, pol, 2);
                        pts.push_back({snc::max_arrival(sv1, cfg.w1, target),
                                       snc::max_arrival(sv2, cfg.w2, target)});
                    }
                }
            }
            for (double lam : lambdas) {
                const RatePolicy pol = solver->solve(kErgodicS, kErgodicS, lam);
                ergodic.push_back({expected_bits(alloc::service_spec(grid, pol, 1)),
                                   expected_bits(alloc::service_spec(grid, pol, 2))});
            }
        }
        append_rows(rows, scheme_name(d), pts, alphas);
        append_rows(rows, scheme_name(d) + "_ergodic", ergodic, alphas);
    }
    return rows;
}

std::vector<ValidateRow> validate_eps(const ExperimentConfig& cfg) {
    std::vector<ValidateRow> rows;
    auto push = [&](const validation::EpsCheck& c) {
        const auto& t = c.tuple;
        rows.push_back({validation::model_label(t.model) + "_user" + std::to_string(t.user),
                        to_db(t.rho_hat.gamma1), to_db(t.rho_hat.gamma2), t.rates.r1, t.rates.r2,
                        to_string(t.rates.order), c.analytic, c.oracle, c.ci.lo, c.ci.hi});
    };
    // Reference point: 20 dB / 7 dB estimates, user 1 decoded first.
    {
        validation::EpsTuple t;
        t.model = cfg.error_model(Decoder::Sic);
        t.model.csi = CsiModel::Imperfect;
        ScenarioConfig sc = cfg.scenario;
        sc.csi = CsiModel::Imperfect;
        t.rho_hat = {100.0, from_db(7.0)};
        t.ctx = {sc.snr.rho_bar1(), sc.snr.rho_bar2(), sc.sigma_z2(1), sc.sigma_z2(2)};
        t.state = csi::make_state(t.ctx.rho_bar1, t.ctx.rho_bar2, t.rho_hat.gamma1, t.rho_hat.gamma2,
                                  t.ctx.sigma_z2_1, t.ctx.sigma_z2_2);
        t.user = 1;
        t.rates = {3.78, 1.0, DecodeOrder::User1First};
        push(validation::check(t, cfg.validate_samples, cfg.seed, cfg.threads));
    }
    if (cfg.validate_tuples > 0) {
        validation::TupleOptions opts;
        opts.oracle_samples = cfg.validate_samples;
        opts.screen_samples = std::max<std::uint64_t>(1000, std::min<std::uint64_t>(100000, cfg.validate_samples / 10));
        opts.n_total = cfg.scenario.n_total;
        opts.beta1 = cfg.scenario.snr.beta1;
        for (const auto& c : validation::sample_checks(cfg.validate_tuples, cfg.seed, opts, cfg.threads))
            push(c);
    }
    return rows;
}

void write_bound_csv(std::ostream& out, const std::vector<BoundRow>& rows) {
    out << "# schema: bound v" << kBoundSchema << "\n";
    out << "scheme,user,w,bound,s_opt\n";
    for (const auto& r : rows)
        out << r.scheme << "," << r.user << "," << r.w << "," << fmt(r.bound) << "," << fmt(r.s_opt) << "\n";
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "# schema: sweep v" << kSweepSchema << "\n";
    out << "scheme,alpha1_bits,max_alpha2_bits\n";
    for (const auto& r : rows)
        out << r.scheme << "," << fmt(r.alpha1_bits) << "," << fmt(r.max_alpha2_bits) << "\n";
}

void write_validate_csv(std::ostream& out, const std::vector<ValidateRow>& rows) {
    out << "# schema: validate v" << kValidateSchema << "\n";
    out << "model,rho_hat1_db,rho_hat2_db,r1,r2,order,eps_analytic,eps_oracle,ci_lo,ci_hi\n";
    for (const auto& r : rows)
        out << r.model << "," << fmt(r.rho_hat1_db) << "," << fmt(r.rho_hat2_db) << "," << fmt(r.r1) << ","
            << fmt(r.r2) << "," << r.order << "," << fmt(r.eps_analytic) << "," << fmt(r.eps_oracle) << ","
            << fmt(r.ci_lo) << "," << fmt(r.ci_hi) << "\n";
}

void write_sim_csv(std::ostream& out, const std::vector<SimRow>& rows) {
    out << "# schema: simulate v" << kSimSchema << "\n";
    out << "fidelity,user,w,pv,ci_lo,ci_hi,bound,verdict\n";
    for (const auto& r : rows)
        out << r.fidelity << "," << r.user << "," << r.w << "," << fmt(r.pv) << "," << fmt(r.ci_lo) << ","
            << fmt(r.ci_hi) << "," << fmt(r.bound) << "," << r.verdict << "\n";
}

void write_policy_csv(std::ostream& out, const OptimizeResult& res) {
    out << "# schema: policy v" << kPolicySchema << "\n";
    out << "point,rho_hat1_db,rho_hat2_db,mass,r1,r2,order,eps1,eps2\n";
    for (std::size_t i = 0; i < res.grid.size(); ++i) {
        const SnrPair e = res.grid.estimate(i);
        const PointDecision& d = res.policy.points[i];
        out << i << "," << fmt(to_db(e.gamma1)) << "," << fmt(to_db(e.gamma2)) << "," << fmt(res.grid.mass(i))
            << "," << fmt(d.rates.r1) << "," << fmt(d.rates.r2) << "," << to_string(d.rates.order) << ","
            << fmt(d.eps.eps1) << "," << fmt(d.eps.eps2) << "\n";
    }
}

}  // namespace experiment
}  // namespace nomadelay
