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

#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nomadelay/alloc.hpp"
#include "nomadelay/errors.hpp"
#include "nomadelay/experiment.hpp"
#include "nomadelay/snc.hpp"

namespace py = pybind11;
using namespace nomadelay;

namespace {

ExperimentConfig config_from_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

py::dict bound_row(const BoundRow& r) {
    return py::dict(py::arg("scheme") = r.scheme, py::arg("user") = r.user, py::arg("w") = r.w,
                    py::arg("bound") = r.bound, py::arg("s_opt") = r.s_opt);
}

py::dict delay_bound_dict(const DelayBound& b) {
    return py::dict(py::arg("w") = b.w, py::arg("bound") = b.bound, py::arg("s_opt") = b.s_opt,
                    py::arg("stable") = b.stable);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Delay-violation bounds, rate adaptation and simulation for two-user uplink NOMA";

    py::register_exception<Infeasible>(m, "Infeasible", PyExc_ValueError);

    py::enum_<DecodeOrder>(m, "DecodeOrder")
        .value("USER1_FIRST", DecodeOrder::User1First)
        .value("USER2_FIRST", DecodeOrder::User2First)
        .value("JOINT", DecodeOrder::Joint);
    py::enum_<CsiModel>(m, "CsiModel").value("PERFECT", CsiModel::Perfect).value("IMPERFECT", CsiModel::Imperfect);
    py::enum_<Coding>(m, "Coding")
        .value("INFINITE", Coding::InfiniteBlocklength)
        .value("FINITE", Coding::FiniteBlocklength);
    py::enum_<Decoder>(m, "Decoder")
        .value("SIC", Decoder::Sic)
        .value("JOINT", Decoder::Joint)
        .value("OMA", Decoder::OmaSingleUser);

    py::class_<RatePair>(m, "RatePair")
        .def(py::init<double, double, DecodeOrder>(), py::arg("r1"), py::arg("r2"),
             py::arg("order") = DecodeOrder::Joint)
        .def_readwrite("r1", &RatePair::r1)
        .def_readwrite("r2", &RatePair::r2)
        .def_readwrite("order", &RatePair::order);

    py::class_<EstimatedState>(m, "EstimatedState")
        .def_readonly("rho_hat1", &EstimatedState::rho_hat1)
        .def_readonly("rho_hat2", &EstimatedState::rho_hat2)
        .def_readonly("sigma_ic1", &EstimatedState::sigma_ic1)
        .def_readonly("sigma_ic2", &EstimatedState::sigma_ic2);

    py::class_<ErrorModel>(m, "ErrorModel")
        .def(py::init([](CsiModel csi, Coding coding, Decoder decoder, int n_d) {
                 ErrorModel e{csi, coding, decoder, n_d};
                 e.validate();
                 return e;
             }),
             py::arg("csi") = CsiModel::Imperfect, py::arg("coding") = Coding::InfiniteBlocklength,
             py::arg("decoder") = Decoder::Sic, py::arg("n_d") = 200)
        .def_readwrite("csi", &ErrorModel::csi)
        .def_readwrite("coding", &ErrorModel::coding)
        .def_readwrite("decoder", &ErrorModel::decoder)
        .def_readwrite("n_d", &ErrorModel::n_d);

    // channel estimation
    m.def("make_state", &csi::make_state, py::arg("rho_bar1"), py::arg("rho_bar2"), py::arg("rho_hat1"),
          py::arg("rho_hat2"), py::arg("sigma_z2_1"), py::arg("sigma_z2_2"),
          "Estimated state with the interference-plus-estimation spreads.");
    m.def("estimation_error_variance", &csi::estimation_error_variance, py::arg("rho_tr"), py::arg("n_tr"));

    // error probabilities
    m.def("q_function", &errors::q_function, py::arg("x"));
    m.def("q_inverse", &errors::q_inverse, py::arg("p"));
    m.def("dispersion_awgn", &errors::dispersion_awgn, py::arg("gamma"));
    m.def("dispersion_iid", &errors::dispersion_iid, py::arg("gamma"));
    m.def("dispersion_mac", &errors::dispersion_mac, py::arg("gamma1"), py::arg("gamma2"));
    m.def(
        "evaluate_eps",
        [](const ErrorModel& model, const RatePair& rates, const EstimatedState& est) {
            const ErrorPair e = errors::evaluate(model, rates, est);
            return py::make_tuple(e.eps1, e.eps2);
        },
        py::arg("model"), py::arg("rates"), py::arg("state"), "Analytic (eps1, eps2).");
    m.def(
        "oracle_eps",
        [](const ErrorModel& model, const RatePair& rates, double rho_hat1, double rho_hat2, double rho_bar1,
           double rho_bar2, double sigma_z2_1, double sigma_z2_2, std::uint64_t samples, std::uint64_t seed,
           unsigned threads) {
            py::gil_scoped_release release;
            const errors::OracleResult r = errors::oracle_eps(model, rates, {rho_hat1, rho_hat2},
                                                              {rho_bar1, rho_bar2, sigma_z2_1, sigma_z2_2},
                                                              samples, seed, threads);
            py::gil_scoped_acquire acquire;
            return py::dict(py::arg("eps1") = r.eps.eps1, py::arg("eps2") = r.eps.eps2,
                            py::arg("ci1") = py::make_tuple(r.ci1.lo, r.ci1.hi),
                            py::arg("ci2") = py::make_tuple(r.ci2.lo, r.ci2.hi), py::arg("samples") = r.samples);
        },
        py::arg("model"), py::arg("rates"), py::arg("rho_hat1"), py::arg("rho_hat2"), py::arg("rho_bar1"),
        py::arg("rho_bar2"), py::arg("sigma_z2_1"), py::arg("sigma_z2_2"), py::arg("samples") = 1000000,
        py::arg("seed") = 1, py::arg("threads") = 0u, "Monte Carlo error frequencies of the exact model.");

    // network calculus
    m.def(
        "delay_bounds",
        [](double alpha, const std::vector<std::tuple<double, double, double>>& atoms, int w_max) {
            ServiceSpec s;
            for (const auto& [mass, bits, eps] : atoms) s.atoms.push_back({mass, bits, eps});
            py::list out;
            for (const DelayBound& b : snc::delay_bounds({alpha}, s, w_max)) out.append(delay_bound_dict(b));
            return out;
        },
        py::arg("alpha"), py::arg("atoms"), py::arg("w_max"),
        "Kernel bounds for w = 1..w_max; atoms are (mass, bits, eps) triples.");
    m.def(
        "max_arrival",
        [](const std::vector<std::tuple<double, double, double>>& atoms, int w, double target_pv) {
            ServiceSpec s;
            for (const auto& [mass, bits, eps] : atoms) s.atoms.push_back({mass, bits, eps});
            return snc::max_arrival(s, w, target_pv);
        },
        py::arg("atoms"), py::arg("w"), py::arg("target_pv"));

    // knapsack
    m.def(
        "solve_knapsack",
        [](const std::vector<std::pair<double, double>>& items, double budget) {
            std::vector<alloc::KnapsackItem> v;
            for (const auto& [value, weight] : items) v.push_back({value, weight});
            const alloc::KnapsackSolution s = alloc::solve_knapsack(v, budget);
            std::vector<bool> sel(s.selected.begin(), s.selected.end());
            return py::dict(py::arg("selected") = sel, py::arg("split_item") = s.split_item,
                            py::arg("split_fraction") = s.split_fraction, py::arg("value") = s.value,
                            py::arg("relaxed_value") = s.relaxed_value, py::arg("weight") = s.weight);
        },
        py::arg("items"), py::arg("budget"), "Greedy 0-1 knapsack over (value, weight) items.");

    // experiment driver
    m.def(
        "resolve_config", [](const std::string& text) { return config_from_text(text).to_ini(); },
        py::arg("ini_text"), "Parse and validate an INI config; returns every resolved key.");
    m.def(
        "bound",
        [](const std::string& text) {
            const ExperimentConfig cfg = config_from_text(text);
            std::vector<BoundRow> rows;
            {
                py::gil_scoped_release release;
                rows = experiment::bound(cfg);
            }
            py::list out;
            for (const auto& r : rows) out.append(bound_row(r));
            return out;
        },
        py::arg("ini_text"));
    m.def(
        "optimize",
        [](const std::string& text) {
            const ExperimentConfig cfg = config_from_text(text);
            OptimizeResult r;
            {
                py::gil_scoped_release release;
                r = experiment::optimize(cfg);
            }
            py::list points;
            for (std::size_t i = 0; i < r.grid.size(); ++i) {
                const SnrPair e = r.grid.estimate(i);
                const PointDecision& d = r.policy.points[i];
                points.append(py::dict(py::arg("rho_hat1") = e.gamma1, py::arg("rho_hat2") = e.gamma2,
                                       py::arg("mass") = r.grid.mass(i), py::arg("r1") = d.rates.r1,
                                       py::arg("r2") = d.rates.r2, py::arg("order") = to_string(d.rates.order),
                                       py::arg("eps1") = d.eps.eps1, py::arg("eps2") = d.eps.eps2));
            }
            return py::dict(py::arg("scheme") = r.scheme, py::arg("s1") = r.policy.s1, py::arg("s2") = r.policy.s2,
                            py::arg("lambda") = r.policy.lambda, py::arg("user1") = delay_bound_dict(r.user1),
                            py::arg("user2") = delay_bound_dict(r.user2), py::arg("iterations") = r.iterations,
                            py::arg("policy") = points);
        },
        py::arg("ini_text"));
    m.def(
        "simulate",
        [](const std::string& text) {
            const ExperimentConfig cfg = config_from_text(text);
            SimulateResult r;
            {
                py::gil_scoped_release release;
                r = experiment::simulate(cfg);
            }
            py::list rows;
            for (const SimRow& s : r.rows)
                rows.append(py::dict(py::arg("fidelity") = s.fidelity, py::arg("user") = s.user, py::arg("w") = s.w,
                                     py::arg("pv") = s.pv, py::arg("ci_lo") = s.ci_lo, py::arg("ci_hi") = s.ci_hi,
                                     py::arg("bound") = s.bound, py::arg("verdict") = s.verdict));
            return py::dict(py::arg("rows") = rows, py::arg("dominated") = r.dominated,
                            py::arg("saturated") = r.saturated);
        },
        py::arg("ini_text"));
    m.def(
        "sweep",
        [](const std::string& text) {
            const ExperimentConfig cfg = config_from_text(text);
            std::vector<SweepRow> rows;
            {
                py::gil_scoped_release release;
                rows = experiment::sweep(cfg);
            }
            py::list out;
            for (const auto& r : rows)
                out.append(py::dict(py::arg("scheme") = r.scheme, py::arg("alpha1_bits") = r.alpha1_bits,
                                    py::arg("max_alpha2_bits") = r.max_alpha2_bits));
            return out;
        },
        py::arg("ini_text"));
    m.def(
        "validate_eps",
        [](const std::string& text) {
            const ExperimentConfig cfg = config_from_text(text);
            std::vector<ValidateRow> rows;
            {
                py::gil_scoped_release release;
                rows = experiment::validate_eps(cfg);
            }
            py::list out;
            for (const auto& r : rows)
                out.append(py::dict(py::arg("model") = r.model, py::arg("rho_hat1_db") = r.rho_hat1_db,
                                    py::arg("rho_hat2_db") = r.rho_hat2_db, py::arg("r1") = r.r1, py::arg("r2") = r.r2,
                                    py::arg("order") = r.order, py::arg("eps_analytic") = r.eps_analytic,
                                    py::arg("eps_oracle") = r.eps_oracle, py::arg("ci_lo") = r.ci_lo,
                                    py::arg("ci_hi") = r.ci_hi));
            return out;
        },
        py::arg("ini_text"));
}
