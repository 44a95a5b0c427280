// SPDX-License-Identifier: Apache-2.0
//
// risdc - RIS passive beamforming by cascaded-channel decoupling
// Copyright (C) 2026 The risdc authors
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

// risdc command-line interface
//
//   risdc single-user [--config cfg.json] --out results.csv [--seed S] [--trials T] [--threads N|auto] [--no-timing]
//   risdc multi-user  [--config cfg.json] --out results.csv [...]
//   risdc solve --g g.json --h h.json [--h h2.json] --method decouple --out result.json

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "risdc/risdc.hpp"

namespace
{

unsigned resolve_threads(const std::string &value)
{
    if (value.empty() || value == "auto")
        return std::max(1u, std::thread::hardware_concurrency());
    try
    {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size() || v < 1)
            throw std::invalid_argument(value);
        return static_cast<unsigned>(v);
    }
    catch (const std::exception &)
    {
        throw risdc::ConfigError("--threads expects a positive integer or 'auto', got '" + value + "'");
    }
}

struct SweepArgs
{
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    int trials = 0;
    std::string threads;
    bool no_timing = false;
};

int run_sweep_command(risdc::Scenario scenario, const SweepArgs &a, const CLI::App &sub)
{
    risdc::ExperimentConfig cfg;
    if (!a.config_path.empty())
        cfg = risdc::load_config_file(a.config_path);
    else
        cfg = scenario == risdc::Scenario::single_user ? risdc::single_user_default() : risdc::multi_user_default();
    if (cfg.scenario != scenario)
        throw risdc::ConfigError(a.config_path + ": scenario is " + risdc::to_string(cfg.scenario));
    if (sub.count("--seed"))
        cfg.master_seed = a.seed;
    if (sub.count("--trials"))
        cfg.trials = a.trials;
    cfg.validate();

    std::string threads = a.threads;
    if (threads.empty())
        if (const char *env = std::getenv("RISDC_THREADS"))
            threads = env;

    risdc::RunOptions opts;
    opts.threads = resolve_threads(threads.empty() ? "1" : threads);
    opts.timing = !a.no_timing;

    const auto result = scenario == risdc::Scenario::single_user ? risdc::run_single_user_sweep(cfg, opts)
                                                                 : risdc::run_multi_user_sweep(cfg, opts);
    risdc::write_csv(result, a.out_path);
    for (const auto &agg : result.aggregates)
        std::cout << risdc::to_string(agg.method) << " n_ris=" << agg.n_ris << " mean=" << agg.mean
                  << " normalized=" << agg.normalized_mean << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"RIS regulation by cascaded-channel decoupling"};
    app.require_subcommand(1);

    SweepArgs su, mu;
    auto add_sweep = [&](const char *name, const char *desc, SweepArgs &a) {
        auto *sub = app.add_subcommand(name, desc);
        sub->add_option("--config", a.config_path, "Experiment configuration (JSON)");
        sub->add_option("--out", a.out_path, "Per-trial CSV output; aggregates go to <out>.summary.csv")->required();
        sub->add_option("--seed", a.seed, "Override master_seed");
        sub->add_option("--trials", a.trials, "Override trial count");
        sub->add_option("--threads", a.threads, "Worker threads (n or auto); falls back to RISDC_THREADS");
        sub->add_flag("--no-timing", a.no_timing, "Write zero wall times so output is byte-reproducible");
        return sub;
    };
    auto *single = add_sweep("single-user", "Single-user sweep over RIS sizes", su);
    auto *multi = add_sweep("multi-user", "Multi-user PA sweep over RIS sizes", mu);

    risdc::SolveRequest req;
    auto *solve = app.add_subcommand("solve", "Solve one regulation matrix from matrix JSON files");
    solve->set_help_flag("--help", "Print this help message and exit");
    solve->add_option("--g", req.g_path, "BS-RIS channel G (N x M)")->required();
    solve->add_option("--h", req.h_paths, "RIS-UE channel H (N x K); repeat for pa")->required();
    solve->add_option("--method", req.method,
                      "decouple | thin | decouple_diag_projected | k1 | ao | random | mirror | pa");
    solve->add_option("--out", req.out_path, "Output JSON")->required();
    solve->add_option("--tx-power", req.budget.tx_power, "Transmit power rho (linear)");
    solve->add_option("--noise-var", req.budget.noise_var, "Noise variance sigma^2");
    solve->add_option("--bandwidth", req.budget.bandwidth_hz, "Bandwidth B in Hz");
    solve->add_option("--streams", req.num_streams, "Number of spatial streams");
    solve->add_option("--seed", req.seed, "Seed for the random method");
    bool no_scaling = false;
    solve->add_flag("--no-element-scaling", no_scaling, "Use rho/sigma^2 instead of rho/(N sigma^2)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : static_cast<int>(risdc::ExitCode::config_error);
    }

    try
    {
        if (*single)
            return run_sweep_command(risdc::Scenario::single_user, su, *single);
        if (*multi)
            return run_sweep_command(risdc::Scenario::multi_user, mu, *multi);
        if (*solve)
        {
            req.budget.apply_element_scaling = !no_scaling;
            req.budget.validate();
            const auto out = risdc::solve_once(req);
            std::cout << "rate_bps_hz=" << out["rate_bps_hz"].get<double>() << "\n";
            return 0;
        }
    }
    catch (const risdc::Error &e)
    {
        std::cerr << "risdc: " << e.what() << "\n";
        return static_cast<int>(e.exit_code());
    }
    catch (const std::exception &e)
    {
        std::cerr << "risdc: " << e.what() << "\n";
        return static_cast<int>(risdc::ExitCode::numerical_error);
    }
    return 0;
}
