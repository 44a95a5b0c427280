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

#ifndef RISDC_SWEEP_HPP
#define RISDC_SWEEP_HPP

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <tuple>
#include <vector>

#include "channel.hpp"
#include "config.hpp"
#include "evaluation.hpp"
#include "solvers.hpp"

namespace risdc
{

struct TrialRecord
{
    Method method = Method::decouple;
    Index n_ris = 0;
    std::uint64_t trial = 0;
    std::vector<double> per_ue_rates; // bit/s/Hz with B = 1
    double rate = 0.0;                // mean per-UE rate
    double sum_rate = 0.0;
    double wall_time_s = 0.0;

    // Diagnostics, not serialized
    std::vector<SeedRecord> seeds;  // realizations this record was scored on
    std::vector<double> ao_history; // ao only
    int ao_iterations = 0;
    double theta_norm = std::numeric_limits<double>::quiet_NaN(); // spectral norm, pa only
};

struct Aggregate
{
    Method method = Method::decouple;
    Index n_ris = 0;
    double mean = 0.0;
    double std_dev = 0.0;
    double normalized_mean = 0.0;
    std::size_t count = 0;
};

struct SweepResult
{
    ExperimentConfig config;
    std::vector<TrialRecord> records;
    std::vector<Aggregate> aggregates;

    const Aggregate &aggregate(Method m, Index n_ris) const
    {
        for (const auto &a : aggregates)
            if (a.method == m && a.n_ris == n_ris)
                return a;
        throw DomainError(std::string("no aggregate for method ") + to_string(m) + " at n_ris = " + std::to_string(n_ris));
    }
};

struct RunOptions
{
    unsigned threads = 1;
    bool timing = true;
};

// Rows are ordered by (method label, n_ris, trial)
inline bool record_less(const TrialRecord &a, const TrialRecord &b)
{
    const std::string am = to_string(a.method);
    const std::string bm = to_string(b.method);
    return std::tie(am, a.n_ris, a.trial) < std::tie(bm, b.n_ris, b.trial);
}

inline std::vector<Aggregate> aggregate_records(const ExperimentConfig &cfg, const std::vector<TrialRecord> &records)
{
    std::map<std::pair<std::string, Index>, std::vector<double>> groups;
    for (const auto &r : records)
        groups[{to_string(r.method), r.n_ris}].push_back(r.sum_rate);

    std::vector<Aggregate> out;
    for (const auto &[key, values] : groups)
    {
        Aggregate a;
        a.method = method_from_string(key.first);
        a.n_ris = key.second;
        a.count = values.size();
        double sum = 0.0;
        for (double v : values)
            sum += v;
        a.mean = sum / static_cast<double>(values.size());
        double ss = 0.0;
        for (double v : values)
            ss += (v - a.mean) * (v - a.mean);
        a.std_dev = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
        out.push_back(a);
    }

    double scale = 0.0;
    for (const auto &a : out)
        if (cfg.normalization == Normalization::global_max ||
            (cfg.normalization == Normalization::reference_method && a.method == cfg.reference_method))
            scale = std::max(scale, a.mean);
    for (auto &a : out)
        a.normalized_mean = (cfg.normalization == Normalization::none || scale == 0.0) ? a.mean : a.mean / scale;
    return out;
}

namespace detail
{
using Clock = std::chrono::steady_clock;

template <typename F>
double timed(bool timing, F &&f)
{
    if (!timing)
    {
        f();
        return 0.0;
    }
    const auto t0 = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Runs work(i) for i in [0, count) on a pool of workers. Results are written to
// per-item slots, so the outcome is independent of scheduling.
template <typename Work>
void parallel_for(std::size_t count, unsigned threads, Work &&work)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < count; ++i)
            work(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;)
            {
                const std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try
                {
                    work(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                    next.store(count);
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

inline TrialRecord make_record(Method m, Index n, std::uint64_t trial, std::vector<double> per_ue, double wall)
{
    TrialRecord r;
    r.method = m;
    r.n_ris = n;
    r.trial = trial;
    r.per_ue_rates = std::move(per_ue);
    for (double v : r.per_ue_rates)
        r.sum_rate += v;
    r.rate = r.per_ue_rates.empty() ? 0.0 : r.sum_rate / static_cast<double>(r.per_ue_rates.size());
    r.wall_time_s = wall;
    return r;
}

// Orthonormal-ish columns spanning col(g) and col(h): the leading singular
// vectors of each segment above a 1e-10 relative cutoff.
inline CMatrix segment_spans(std::span<const DecoupledSolution> sols)
{
    std::vector<CMatrix> blocks;
    Index width = 0;
    for (const auto &s : sols)
    {
        const Index rg = std::max<Index>(numerical_rank(s.svd_g.s, 1e-10), 1);
        const Index rh = std::max<Index>(numerical_rank(s.svd_h.s, 1e-10), 1);
        blocks.push_back(s.svd_g.u.leftCols(rg));
        blocks.push_back(s.svd_h.v.leftCols(rh));
        width += rg + rh;
    }
    CMatrix out(sols.front().svd_g.u.rows(), width);
    Index col = 0;
    for (const auto &b : blocks)
    {
        out.middleCols(col, b.cols()) = b;
        col += b.cols();
    }
    return out;
}

inline std::vector<TrialRecord> single_user_trial(const ExperimentConfig &cfg, const ArrayGeometry &ris,
                                                  std::uint64_t trial, bool timing)
{
    const std::vector<ArrayGeometry> ues{cfg.ue_geometry()};
    const LinkRealization link = draw_link(cfg.channel, cfg.bs_geometry, ris, ues, cfg.master_seed, trial);
    const CMatrix &g = link.g;
    const CMatrix &h = link.h_per_ue.front();
    const Index n = ris.n();
    const LinkBudget budget = cfg.budget.with_elements(n);

    std::vector<TrialRecord> out;
    for (Method m : cfg.methods)
    {
        double rate = 0.0;
        std::vector<double> history;
        int iterations = 0;
        const double wall = timed(timing, [&] {
            switch (m)
            {
            case Method::decouple: {
                const auto sol = thin_decouple(g, h);
                rate = decoupled_rate_closed_form(sol.svd_g, sol.svd_h, budget, cfg.num_streams);
                break;
            }
            case Method::decouple_diag_projected: {
                const auto sol = svd_decouple(g, h);
                const auto diag = project_full_to_diagonal(sol.theta);
                rate = precoded_rate(effective_channel(h, diag, g), budget, cfg.num_streams);
                break;
            }
            case Method::ao: {
                const auto res = ao_diagonal_solve(g, h, budget, cfg.ao);
                rate = res.rate_history.empty() ? 0.0 : res.rate_history.back();
                history = res.rate_history;
                iterations = res.iterations;
                break;
            }
            case Method::random: {
                RandomStream rng(StreamKey{cfg.master_seed, trial, 0, purpose::random_phase});
                const auto theta = random_phase_diag(n, rng);
                rate = precoded_rate(effective_channel(h, theta, g), budget, cfg.num_streams);
                break;
            }
            default:
                throw ConfigError(std::string("method ") + to_string(m) + " is not a single-user method");
            }
        });
        TrialRecord r = make_record(m, n, trial, {rate}, wall);
        r.seeds = {link.seed_record};
        r.ao_history = std::move(history);
        r.ao_iterations = iterations;
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<TrialRecord> multi_user_trial(const ExperimentConfig &cfg, const ArrayGeometry &ris,
                                                 std::uint64_t trial, bool timing)
{
    const std::size_t k_ues = static_cast<std::size_t>(cfg.num_ues);
    const std::vector<ArrayGeometry> ues{cfg.ue_geometry()};
    const Index n = ris.n();
    const LinkBudget budget = cfg.budget.with_elements(n);
    const std::vector<double> power = equal_power_split(budget, k_ues);

    // Independent BS-RIS and RIS-UE links per UE
    std::vector<LinkRealization> links;
    std::vector<SeedRecord> seeds;
    for (std::size_t k = 0; k < k_ues; ++k)
    {
        links.push_back(draw_link(cfg.channel, cfg.bs_geometry, ris, ues, cfg.master_seed, trial, k));
        seeds.push_back(links.back().seed_record);
    }

    std::vector<DecoupledSolution> sols;
    std::vector<RegulationMatrix> per_ue;
    const double solve_wall = timed(timing, [&] {
        for (const auto &l : links)
        {
            sols.push_back(thin_decouple(l.g, l.h_per_ue.front()));
            per_ue.push_back(sols.back().theta);
        }
    });

    std::vector<TrialRecord> out;
    for (Method m : cfg.methods)
    {
        MultiuserRates rates;
        double theta_norm = std::numeric_limits<double>::quiet_NaN();
        double wall = timed(timing, [&] {
            switch (m)
            {
            case Method::perfect:
                rates = multiuser_sum_rate(links, per_ue, budget, power, cfg.num_streams);
                break;
            case Method::pa: {
                const auto theta_mu = pa_combine(per_ue, cfg.resolved_pa_weights());
                theta_norm = theta_mu.spectral_norm();
                rates = multiuser_sum_rate(links, theta_mu, budget, power, cfg.num_streams);
                break;
            }
            case Method::unexpected: {
                RandomStream rng(StreamKey{cfg.master_seed, trial, 0, purpose::haar});
                const auto theta = haar_unitary_restricted(segment_spans(sols), rng);
                rates = multiuser_sum_rate(links, theta, budget, power, cfg.num_streams);
                break;
            }
            case Method::mirror:
                rates = multiuser_sum_rate(links, mirror_identity(n), budget, power, cfg.num_streams);
                break;
            default:
                throw ConfigError(std::string("method ") + to_string(m) + " is not a multi-user method");
            }
        });
        if (m == Method::perfect || m == Method::pa)
            wall += solve_wall;
        TrialRecord r = make_record(m, n, trial, rates.per_ue, wall);
        r.seeds = seeds;
        r.theta_norm = theta_norm;
        out.push_back(std::move(r));
    }
    return out;
}

inline SweepResult run_sweep(const ExperimentConfig &cfg, const RunOptions &opts)
{
    cfg.validate();
    const std::size_t sizes = cfg.ris_sizes.size();
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    std::vector<std::vector<TrialRecord>> slots(sizes * trials);

    parallel_for(slots.size(), opts.threads, [&](std::size_t item) {
        const auto &ris = cfg.ris_sizes[item / trials];
        const std::uint64_t trial = item % trials;
        slots[item] = (cfg.scenario == Scenario::single_user) ? single_user_trial(cfg, ris, trial, opts.timing)
                                                              : multi_user_trial(cfg, ris, trial, opts.timing);
    });

    SweepResult result;
    result.config = cfg;
    for (auto &s : slots)
        for (auto &r : s)
            result.records.push_back(std::move(r));
    std::stable_sort(result.records.begin(), result.records.end(), record_less);
    result.aggregates = aggregate_records(cfg, result.records);
    return result;
}
} // namespace detail

// Every configured method is scored on the same realization within a trial.
inline SweepResult run_single_user_sweep(const ExperimentConfig &cfg, const RunOptions &opts = {})
{
    if (cfg.scenario != Scenario::single_user)
        throw ConfigError("run_single_user_sweep requires scenario = single_user");
    return detail::run_sweep(cfg, opts);
}

inline SweepResult run_multi_user_sweep(const ExperimentConfig &cfg, const RunOptions &opts = {})
{
    if (cfg.scenario != Scenario::multi_user)
        throw ConfigError("run_multi_user_sweep requires scenario = multi_user");
    return detail::run_sweep(cfg, opts);
}

} // namespace risdc

#endif
