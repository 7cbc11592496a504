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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nomadelay/experiment.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nomadelay;

namespace {

struct Common {
    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = -1;
};

ExperimentConfig resolve(const Common& c) {
    ExperimentConfig cfg;
    if (!c.config_path.empty()) cfg = load_config(c.config_path);
    if (c.seed_set) cfg.seed = c.seed;
    if (c.threads >= 0) cfg.threads = static_cast<unsigned>(c.threads);
    cfg.validate();
    return cfg;
}

std::string preamble(const std::string& command, const ExperimentConfig& cfg) {
    std::ostringstream o;
    o << "# nomadelay " << command << "\n# seed: " << cfg.seed << "\n# config:\n";
    std::istringstream ini(cfg.to_ini());
    for (std::string line; std::getline(ini, line);) o << "#   " << line << "\n";
    return o.str();
}

json config_json(const ExperimentConfig& cfg) {
    json j = json::object();
    std::istringstream ini(cfg.to_ini());
    std::string section;
    for (std::string line; std::getline(ini, line);) {
        if (line.empty()) continue;
        if (line.front() == '[') {
            section = line.substr(1, line.size() - 2);
            j[section] = json::object();
            continue;
        }
        const auto eq = line.find(" = ");
        j[section][line.substr(0, eq)] = line.substr(eq + 3);
    }
    return j;
}

template <class Writer>
fs::path write_table(const fs::path& dir, const std::string& name, const std::string& command,
                     const ExperimentConfig& cfg, Writer writer) {
    const fs::path path = dir / (name + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << preamble(command, cfg);
    writer(out);
    return path;
}

void write_sidecar(const fs::path& dir, const std::string& command, const ExperimentConfig& cfg,
                   const json& tables, const json& summary) {
    json j;
    j["tool"] = "nomadelay";
    j["command"] = command;
    j["seed"] = cfg.seed;
    j["threads"] = cfg.threads;
    j["config"] = config_json(cfg);
    j["config_ini"] = cfg.to_ini();
    j["tables"] = tables;
    j["summary"] = summary;
    std::ofstream out(dir / (command + ".json"));
    out << j.dump(2) << "\n";
}

int run(const std::string& command, const Common& common) {
    const ExperimentConfig cfg = resolve(common);
    const fs::path dir(common.out_dir);
    fs::create_directories(dir);
    json tables = json::object();
    json summary = json::object();

    if (command == "bound") {
        const auto rows = experiment::bound(cfg);
        write_table(dir, "bound", command, cfg, [&](std::ostream& o) { experiment::write_bound_csv(o, rows); });
        tables["bound"] = {{"file", "bound.csv"}, {"schema", kBoundSchema}};
        for (const auto& r : rows) std::cout << r.scheme << " user " << r.user << " w=" << r.w << " bound=" << r.bound << "\n";
    } else if (command == "optimize") {
        const OptimizeResult res = experiment::optimize(cfg);
        write_table(dir, "policy", command, cfg, [&](std::ostream& o) { experiment::write_policy_csv(o, res); });
        tables["policy"] = {{"file", "policy.csv"}, {"schema", kPolicySchema}};
        summary = {{"scheme", res.scheme},        {"s1", res.policy.s1},
                   {"s2", res.policy.s2},         {"lambda", res.policy.lambda},
                   {"bound_user1", res.user1.bound}, {"bound_user2", res.user2.bound},
                   {"w1", cfg.w1},                {"w2", cfg.w2},
                   {"iterations", res.iterations}};
        std::cout << summary.dump(2) << "\n";
    } else if (command == "simulate") {
        const SimulateResult res = experiment::simulate(cfg);
        write_table(dir, "simulate", command, cfg, [&](std::ostream& o) { experiment::write_sim_csv(o, res.rows); });
        write_table(dir, "bound", command, cfg, [&](std::ostream& o) { experiment::write_bound_csv(o, res.bounds); });
        tables["simulate"] = {{"file", "simulate.csv"}, {"schema", kSimSchema}};
        tables["bound"] = {{"file", "bound.csv"}, {"schema", kBoundSchema}};
        summary = {{"dominated", res.dominated}, {"saturated", res.saturated}};
        if (res.saturated) std::cerr << "warning: a queue saturated during simulation\n";
        std::cout << "dominance: " << (res.dominated ? "pass" : "FAIL") << "\n";
    } else if (command == "sweep") {
        const auto rows = experiment::sweep(cfg);
        write_table(dir, "sweep", command, cfg, [&](std::ostream& o) { experiment::write_sweep_csv(o, rows); });
        tables["sweep"] = {{"file", "sweep.csv"}, {"schema", kSweepSchema}};
    } else if (command == "validate-eps") {
        const auto rows = experiment::validate_eps(cfg);
        write_table(dir, "validate", command, cfg, [&](std::ostream& o) { experiment::write_validate_csv(o, rows); });
        tables["validate"] = {{"file", "validate.csv"}, {"schema", kValidateSchema}};
        int outside = 0;
        for (const auto& r : rows)
            if (r.eps_oracle > 0.0 && (r.eps_analytic < 0.5 * r.eps_oracle || r.eps_analytic > 5.0 * r.eps_oracle))
                ++outside;
        summary = {{"rows", rows.size()}, {"outside_band", outside}};
        std::cout << rows.size() << " rows, " << outside << " outside the [0.5, 5]x band\n";
    }
    write_sidecar(dir, command == "validate-eps" ? "validate" : command, cfg, tables, summary);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Delay-violation bounds, rate adaptation and simulation for two-user uplink NOMA"};
    app.require_subcommand(1);
    Common common;
    std::string chosen;
    const std::pair<const char*, const char*> commands[] = {
        {"bound", "delay-violation bounds for w = 1..w_max under the optimized policy"},
        {"optimize", "optimize the rate adaptation for user 2 subject to user 1's target"},
        {"simulate", "simulate both queues and compare with the bounds"},
        {"sweep", "max arrival of user 2 over a range of user-1 arrivals per scheme"},
        {"validate-eps", "analytic error probabilities against the exact-model oracle"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", common.config_path, "INI config file")->check(CLI::ExistingFile);
        sub->add_option("--out", common.out_dir, "output directory");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](const std::uint64_t& v) { common.seed = v; common.seed_set = true; },
            "RNG seed (overrides the config)");
        sub->add_option("--threads", common.threads, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
        sub->callback([&chosen, name] { chosen = name; });
    }
    CLI11_PARSE(app, argc, argv);
    try {
        return run(chosen, common);
    } catch (const Infeasible& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
