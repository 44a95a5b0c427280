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

#ifndef RISDC_EVALUATION_HPP
#define RISDC_EVALUATION_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "channel.hpp"
#include "errors.hpp"
#include "linalg.hpp"
#include "regulation.hpp"

namespace risdc
{

// B, rho, sigma^2 and the element count dividing the SNR in
//   R = B log2 det(I_K + rho / (N sigma^2) H F F^H H^H).
// With apply_element_scaling = false the conventional rho / sigma^2 is used.
struct LinkBudget
{
    double bandwidth_hz = 1.0;
    double tx_power = 10.0;
    double noise_var = 1.0;
    double element_scaling = 1.0;
    bool apply_element_scaling = true;

    double snr_factor() const
    {
        const double base = tx_power / noise_var;
        return apply_element_scaling ? base / element_scaling : base;
    }

    LinkBudget with_tx_power(double p) const
    {
        LinkBudget b = *this;
        b.tx_power = p;
        return b;
    }

    LinkBudget with_elements(Index n) const
    {
        LinkBudget b = *this;
        b.element_scaling = static_cast<double>(n);
        return b;
    }

    void validate() const
    {
        auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
        if (!positive(bandwidth_hz))
            throw ConfigError("bandwidth_hz must be positive");
        if (!positive(tx_power))
            throw ConfigError("tx_power must be positive");
        if (!positive(noise_var))
            throw ConfigError("noise_var must be positive");
        if (!(element_scaling >= 1.0) || !std::isfinite(element_scaling))
            throw ConfigError("element_scaling must be at least 1");
    }
};

struct PrecoderResult
{
    CMatrix f; // M x L
    Index num_streams = 0;
    std::vector<double> per_stream_power;
};

// h^H Theta g, shape K x M
inline CMatrix effective_channel(const CMatrix &h, const RegulationMatrix &theta, const CMatrix &g)
{
    if (h.rows() != theta.n() || g.rows() != theta.n())
        throw DomainError("effective_channel: theta has n = " + std::to_string(theta.n()) + " but h is " + shape_string(h) +
                          " and g is " + shape_string(g));
    switch (theta.representation())
    {
    case Representation::full:
        return h.adjoint() * (theta.as_full().matrix * g);
    case Representation::diagonal:
        return h.adjoint() * (theta.as_diagonal().phases.asDiagonal() * g);
    case Representation::thin:
        return (h.adjoint() * theta.as_thin().a) * (theta.as_thin().b * g);
    }
    return {};
}

// Top-L right singular vectors of h_dl with uniform power 1/L per stream
inline PrecoderResult design_precoder(const CMatrix &h_dl, Index num_streams)
{
    if (num_streams < 1 || num_streams > std::min(h_dl.rows(), h_dl.cols()))
        throw DomainError("num_streams = " + std::to_string(num_streams) + " invalid for channel " + shape_string(h_dl));
    require_finite(h_dl, "downlink channel");
    if (h_dl.norm() == 0.0)
        throw DomainError("design_precoder: zero channel, the achievable rate is 0");

    const SvdFactors svd = thin_svd(h_dl, "downlink channel");
    const double amp = std::sqrt(1.0 / static_cast<double>(num_streams));

    PrecoderResult out;
    out.f = svd.v.leftCols(num_streams) * amp;
    out.num_streams = num_streams;
    out.per_stream_power.assign(static_cast<std::size_t>(num_streams), 1.0 / static_cast<double>(num_streams));
    return out;
}

// B log2 det(I + c H F F^H H^H), evaluated through the smaller Gram matrix and a
// Cholesky factor of the positive-definite update.
inline double achievable_rate(const CMatrix &h_dl, const PrecoderResult &precoder, const LinkBudget &budget)
{
    const CMatrix &f = precoder.f;
    if (h_dl.cols() != f.rows())
        throw DomainError("achievable_rate: channel " + shape_string(h_dl) + " incompatible with precoder " + shape_string(f));
    require_finite(h_dl, "downlink channel");
    require_finite(f, "precoder");

    const CMatrix a = h_dl * f; // K x L
    const double c = budget.snr_factor();
    const Index d = std::min(a.rows(), a.cols());
    if (d == 0)
        return 0.0;
    CMatrix gram = (a.cols() <= a.rows()) ? CMatrix(a.adjoint() * a) : CMatrix(a * a.adjoint());
    gram *= c;
    gram.diagonal().array() += 1.0;

    Eigen::LLT<CMatrix> llt(gram);
    if (llt.info() != Eigen::Success)
        throw NumericalError("achievable_rate: Gram update is not positive definite");
    double logdet = 0.0;
    for (Index i = 0; i < d; ++i)
        logdet += 2.0 * std::log(std::real(llt.matrixLLT()(i, i)));
    return std::max(0.0, budget.bandwidth_hz * logdet / std::numbers::ln2);
}

// Rate with the uniform-power SVD precoder; 0 for a zero channel.
inline double precoded_rate(const CMatrix &h_dl, const LinkBudget &budget, Index num_streams = 1)
{
    if (h_dl.norm() == 0.0)
        return 0.0;
    const Index l = std::min(num_streams, std::min(h_dl.rows(), h_dl.cols()));
    return achievable_rate(h_dl, design_precoder(h_dl, l), budget);
}

// B sum_i log2(1 + c / L * s_H,i^2 s_G,i^2) for the first L stream pairs
inline double decoupled_rate_closed_form(const SvdFactors &svd_g, const SvdFactors &svd_h, const LinkBudget &budget,
                                         Index num_streams)
{
    const Index avail = std::min(svd_g.s.size(), svd_h.s.size());
    if (num_streams < 1 || num_streams > avail)
        throw DomainError("decoupled_rate_closed_form: " + std::to_string(num_streams) + " streams requested, " +
                          std::to_string(avail) + " singular value pairs available");
    const double c = budget.snr_factor() / static_cast<double>(num_streams);
    double r = 0.0;
    for (Index i = 0; i < num_streams; ++i)
    {
        const double gain = svd_h.s(i) * svd_g.s(i);
        r += std::log1p(c * gain * gain);
    }
    return budget.bandwidth_hz * r / std::numbers::ln2;
}

struct MultiuserRates
{
    std::vector<double> per_ue;
    double sum = 0.0;
};

inline void check_power_split(std::span<const double> power_split, std::size_t num_ues, const LinkBudget &budget)
{
    if (power_split.size() != num_ues)
        throw DomainError("power split has " + std::to_string(power_split.size()) + " entries for " +
                          std::to_string(num_ues) + " UEs");
    double total = 0.0;
    for (double p : power_split)
    {
        if (!(p >= 0.0))
            throw DomainError("per-UE power must be nonnegative");
        total += p;
    }
    if (total > budget.tx_power * (1.0 + 1e-12))
        throw DomainError("per-UE powers sum to " + std::to_string(total) + ", exceeding tx_power " +
                          std::to_string(budget.tx_power));
}

inline std::vector<double> equal_power_split(const LinkBudget &budget, std::size_t num_ues)
{
    return std::vector<double>(num_ues, budget.tx_power / static_cast<double>(num_ues));
}

namespace detail
{
template <typename ThetaFor>
MultiuserRates orthogonal_sum_rate(std::span<const LinkRealization> ue_links, ThetaFor theta_for,
                                   const LinkBudget &budget, std::span<const double> power_split, Index num_streams)
{
    check_power_split(power_split, ue_links.size(), budget);
    MultiuserRates out;
    for (std::size_t k = 0; k < ue_links.size(); ++k)
    {
        const auto &link = ue_links[k];
        if (link.h_per_ue.size() != 1)
            throw DomainError("multi-user links must carry exactly one h per UE");
        const CMatrix heff = effective_channel(link.h_per_ue.front(), theta_for(k), link.g);
        const double r =
            (power_split[k] == 0.0) ? 0.0 : precoded_rate(heff, budget.with_tx_power(power_split[k]), num_streams);
        out.per_ue.push_back(r);
        out.sum += r;
    }
    return out;
}
} // namespace detail

// Orthogonal (OFDMA) users: UE k sees h_k^H Theta g_k with power p_k and no
// interference from other users. ue_links[k] carries UE k's own g and a single h.
inline MultiuserRates multiuser_sum_rate(std::span<const LinkRealization> ue_links, const RegulationMatrix &theta_mu,
                                         const LinkBudget &budget, std::span<const double> power_split,
                                         Index num_streams = 1)
{
    return detail::orthogonal_sum_rate(
        ue_links, [&](std::size_t) -> const RegulationMatrix & { return theta_mu; }, budget, power_split, num_streams);
}

// Each UE scored with its own regulation matrix
inline MultiuserRates multiuser_sum_rate(std::span<const LinkRealization> ue_links,
                                         std::span<const RegulationMatrix> per_ue_theta, const LinkBudget &budget,
                                         std::span<const double> power_split, Index num_streams = 1)
{
    if (per_ue_theta.size() != ue_links.size())
        throw DomainError("one regulation matrix per UE required");
    return detail::orthogonal_sum_rate(
        ue_links, [&](std::size_t k) -> const RegulationMatrix & { return per_ue_theta[k]; }, budget, power_split,
        num_streams);
}

// Shared-G form: one realization, UE k uses link.h_per_ue[k]
inline MultiuserRates multiuser_sum_rate(const LinkRealization &link, const RegulationMatrix &theta_mu,
                                         const LinkBudget &budget, std::span<const double> power_split,
                                         Index num_streams = 1)
{
    std::vector<LinkRealization> split;
    for (const auto &h : link.h_per_ue)
        split.push_back({link.g, {h}, link.seed_record});
    return multiuser_sum_rate(split, theta_mu, budget, power_split, num_streams);
}

} // namespace risdc

#endif
