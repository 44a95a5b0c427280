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

#ifndef RISDC_SOLVE_HPP
#define RISDC_SOLVE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "matrix_json.hpp"
#include "random.hpp"
#include "solvers.hpp"

namespace risdc
{

// One-shot solve on matrices loaded from disk.
//   methods: decouple, thin, decouple_diag_projected, k1, ao, random, mirror, pa
struct SolveRequest
{
    std::string g_path;
    std::vector<std::string> h_paths;
    std::string method = "decouple";
    std::string out_path;
    LinkBudget budget; // element_scaling is replaced by the RIS size of g
    Index num_streams = 1;
    std::uint64_t seed = 42;
    AoOptions ao;
};

inline json solve_matrices(const CMatrix &g, const std::vector<CMatrix> &hs, const SolveRequest &req)
{
    if (hs.empty())
        throw ConfigError("solve: at least one h matrix is required");
    for (std::size_t k = 0; k < hs.size(); ++k)
        if (hs[k].rows() != g.rows() || hs[k].cols() < 1)
            throw DomainError("solve: h[" + std::to_string(k) + "] must be " + std::to_string(g.rows()) +
                              " x K to match g (" + shape_string(g) + "), got " + shape_string(hs[k]));
    if (g.rows() < 1 || g.cols() < 1)
        throw DomainError("solve: g must be N x M with N, M >= 1, got " + shape_string(g));
    if (req.method != "pa" && hs.size() != 1)
        throw ConfigError("solve: method '" + req.method + "' takes exactly one h");

    const LinkBudget budget = req.budget.with_elements(g.rows());
    const CMatrix &h = hs.front();
    json out{{"method", req.method}};
    json theta1 = nullptr;
    json theta2 = nullptr;
    std::optional<RegulationMatrix> theta;

    if (req.method == "decouple" || req.method == "thin")
    {
        const auto sol = req.method == "decouple" ? svd_decouple(g, h) : thin_decouple(g, h);
        theta1 = matrix_to_json(sol.theta1);
        theta2 = matrix_to_json(sol.theta2);
        theta = sol.theta;
    }
    else if (req.method == "decouple_diag_projected")
        theta = project_full_to_diagonal(svd_decouple(g, h).theta);
    else if (req.method == "k1")
    {
        if (h.cols() != 1)
            throw DomainError("solve: k1 requires a single-antenna UE (h is N x 1), got " + shape_string(h));
        // Transmit along the dominant right singular vector of g
        const CVector g_eff = g * thin_svd(g, "g").v.col(0);
        theta = k1_phase_align(h.col(0), g_eff);
    }
    else if (req.method == "ao")
        theta = ao_diagonal_solve(g, h, budget, req.ao).theta;
    else if (req.method == "random")
    {
        RandomStream rng(StreamKey{req.seed, 0, 0, purpose::random_phase});
        theta = random_phase_diag(g.rows(), rng);
    }
    else if (req.method == "mirror")
        theta = mirror_identity(g.rows());
    else if (req.method == "pa")
    {
        std::vector<RegulationMatrix> parts;
        for (const auto &hk : hs)
            parts.push_back(thin_decouple(g, hk).theta);
        theta = pa_combine(parts, PAWeights::equal(parts.size()));
    }
    else
        throw ConfigError("solve: unknown method '" + req.method + "'");

    out["theta"] = regulation_to_json(*theta);
    out["theta1"] = theta1;
    out["theta2"] = theta2;

    if (req.method == "pa")
    {
        json effs = json::array();
        double total = 0.0;
        const double p = budget.tx_power / static_cast<double>(hs.size());
        for (const auto &hk : hs)
        {
            const CMatrix eff = effective_channel(hk, *theta, g);
            effs.push_back(matrix_to_json(eff));
            total += precoded_rate(eff, budget.with_tx_power(p), req.num_streams);
        }
        out["effective_channel"] = effs;
        out["rate_bps_hz"] = total;
    }
    else
    {
        const CMatrix eff = effective_channel(h, *theta, g);
        out["effective_channel"] = matrix_to_json(eff);
        out["rate_bps_hz"] = precoded_rate(eff, budget, req.num_streams);
    }
    return out;
}

// Loads inputs, solves, and writes the JSON result. Nothing is written unless
// every step before the write succeeds.
inline json solve_once(const SolveRequest &req)
{
    const CMatrix g = load_matrix_file(req.g_path);
    std::vector<CMatrix> hs;
    for (const auto &p : req.h_paths)
        hs.push_back(load_matrix_file(p));
    json out = solve_matrices(g, hs, req);
    if (!req.out_path.empty())
        write_text_file(req.out_path, out.dump(2) + "\n");
    return out;
}

} // namespace risdc

#endif
