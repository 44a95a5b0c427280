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

#ifndef RISDC_SOLVERS_HPP
#define RISDC_SOLVERS_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "evaluation.hpp"
#include "linalg.hpp"
#include "random.hpp"
#include "regulation.hpp"

namespace risdc
{

// Theta = Theta2 * Theta1 with Theta1 = U_G^H (receiving response, from G) and
// Theta2 = V_H (output regulation, from H^H).
struct DecoupledSolution
{
    CMatrix theta1;
    CMatrix theta2;
    RegulationMatrix theta;
    SvdFactors svd_g; // thin SVD of G
    SvdFactors svd_h; // thin SVD of H^H
};

namespace detail
{
inline void check_segments(const CMatrix &g, const CMatrix &h)
{
    if (g.rows() < 1 || g.cols() < 1 || h.cols() < 1)
        throw DomainError("segment channels must be nonempty, got g " + shape_string(g) + " and h " + shape_string(h));
    if (g.rows() != h.rows())
        throw DomainError("g and h must have the same number of RIS rows, got g " + shape_string(g) + " and h " +
                          shape_string(h));
    require_finite(g, "g");
    require_finite(h, "h");
}
} // namespace detail

// Full N x N unitary regulation built from complete singular bases of G and H^H.
inline DecoupledSolution svd_decouple(const CMatrix &g, const CMatrix &h)
{
    detail::check_segments(g, h);
    SvdFactors svd_g = thin_svd(g, "g");
    SvdFactors svd_h = thin_svd(h.adjoint(), "h^H");

    CMatrix theta1 = complete_orthonormal(svd_g.u).adjoint();
    CMatrix theta2 = complete_orthonormal(svd_h.v);
    CMatrix theta = theta2 * theta1;
    return {std::move(theta1), std::move(theta2), RegulationMatrix::full(std::move(theta)), std::move(svd_g),
            std::move(svd_h)};
}

// Rank-r factorization Theta = A B with A = V_H[:, :r] and B = U_G[:, :r]^H,
// r = min(K, M, N). The discarded columns of V_H are annihilated by h^H and the
// discarded columns of U_G by G^H, so h^H A B g equals the full-solution channel.
inline DecoupledSolution thin_decouple(const CMatrix &g, const CMatrix &h)
{
    detail::check_segments(g, h);
    SvdFactors svd_g = thin_svd(g, "g");
    SvdFactors svd_h = thin_svd(h.adjoint(), "h^H");

    const Index r = std::min(svd_g.s.size(), svd_h.s.size());
    CMatrix a = svd_h.v.leftCols(r);
    CMatrix b = svd_g.u.leftCols(r).adjoint();
    RegulationMatrix theta = RegulationMatrix::thin(a, b);
    return {std::move(b), std::move(a), std::move(theta), std::move(svd_g), std::move(svd_h)};
}

// theta_i = exp(j (arg h_i - arg g_i)), so that h^H Theta g = sum_i |h_i| |g_i|
inline RegulationMatrix k1_phase_align(const CVector &h, const CVector &g_eff)
{
    if (h.size() != g_eff.size() || h.size() == 0)
        throw DomainError("k1_phase_align: h has " + std::to_string(h.size()) + " entries, g_eff has " +
                          std::to_string(g_eff.size()));
    CVector phases(h.size());
    for (Index i = 0; i < h.size(); ++i)
    {
        if (h(i) == 0.0 || g_eff(i) == 0.0)
            phases(i) = 1.0;
        else
            phases(i) = std::polar(1.0, std::arg(h(i)) - std::arg(g_eff(i)));
    }
    return RegulationMatrix::diagonal(std::move(phases));
}

struct AoOptions
{
    int max_iters = 50;
    double rel_tol = 1e-4;
};

struct AoResult
{
    RegulationMatrix theta;
    PrecoderResult precoder;
    std::vector<double> rate_history; // single-stream rate after each iteration
    int iterations = 0;
    bool converged = false;
};

// Alternating optimization of a diagonal unit-modulus Theta and a single-stream
// precoder. Given Theta, f and the combiner u are the dominant singular pair of
// h^H Theta g; given (f, u), every phase is aligned so that u^H h^H Theta g f
// becomes sum_i |(h u)_i| |(g f)_i|. Neither step can lower sigma_max, so the
// rate history is non-decreasing.
inline AoResult ao_diagonal_solve(const CMatrix &g, const CMatrix &h, const LinkBudget &budget, AoOptions opts = {})
{
    detail::check_segments(g, h);
    if (opts.max_iters < 1)
        throw DomainError("ao_diagonal_solve: max_iters must be at least 1");
    if (!(opts.rel_tol > 0.0))
        throw DomainError("ao_diagonal_solve: rel_tol must be positive");

    const Index n = g.rows();
    const Index m = g.cols();
    auto unit_precoder = [](CVector f) {
        PrecoderResult p;
        p.f = std::move(f);
        p.num_streams = 1;
        p.per_stream_power = {1.0};
        return p;
    };
    auto rate_of = [&](double smax) { return budget.bandwidth_hz * std::log1p(budget.snr_factor() * smax * smax) / std::numbers::ln2; };

    CVector phases = CVector::Ones(n);
    if (g.norm() == 0.0 || h.norm() == 0.0)
    {
        AoResult out{RegulationMatrix::diagonal(std::move(phases)), unit_precoder(CVector::Unit(m, 0)), {0.0}, 1, true};
        return out;
    }

    auto heff_of = [&](const CVector &p) -> CMatrix { return h.adjoint() * (p.asDiagonal() * g); };

    CMatrix heff = heff_of(phases);
    double prev_rate = heff.norm() == 0.0 ? 0.0 : rate_of(spectral_norm(heff));

    AoResult out{RegulationMatrix::diagonal(phases), unit_precoder(CVector::Unit(m, 0)), {}, 0, false};
    CVector f;
    CVector u;
    for (int it = 0; it < opts.max_iters; ++it)
    {
        if (heff.norm() == 0.0)
        {
            // No coupling through the current phases: start from the dominant
            // directions of the individual segments instead.
            f = thin_svd(g, "g").v.col(0);
            u = thin_svd(h.adjoint(), "h^H").u.col(0);
        }
        else
        {
            const SvdFactors s = thin_svd(heff, "effective channel");
            f = s.v.col(0);
            u = s.u.col(0);
        }

        const CVector hu = h * u;
        const CVector gf = g * f;
        for (Index i = 0; i < n; ++i)
            phases(i) = (hu(i) == 0.0 || gf(i) == 0.0) ? cdouble(1.0) : std::polar(1.0, std::arg(hu(i)) - std::arg(gf(i)));

        heff = heff_of(phases);
        const double rate = heff.norm() == 0.0 ? 0.0 : rate_of(spectral_norm(heff));
        out.rate_history.push_back(rate);
        out.iterations = it + 1;

        const double change = std::abs(rate - prev_rate) / std::max(std::abs(prev_rate), 1e-300);
        prev_rate = rate;
        if (change < opts.rel_tol)
        {
            out.converged = true;
            break;
        }
    }

    out.theta = RegulationMatrix::diagonal(phases);
    if (heff.norm() > 0.0)
        out.precoder = design_precoder(heff, 1);
    return out;
}

// Uniform random phases on [0, 2 pi)
inline RegulationMatrix random_phase_diag(Index n, RandomStream &rng)
{
    if (n < 1)
        throw DomainError("random_phase_diag: n must be positive");
    CVector phases(n);
    for (Index i = 0; i < n; ++i)
        phases(i) = rng.unit_phasor();
    return RegulationMatrix::diagonal(std::move(phases));
}

inline RegulationMatrix mirror_identity(Index n)
{
    if (n < 1)
        throw DomainError("mirror_identity: n must be positive");
    return RegulationMatrix::diagonal(CVector::Ones(n));
}

namespace detail
{
// First cols columns of a Haar-distributed n x n unitary: QR of a complex
// Gaussian block with the column phases of diag(R) removed.
inline CMatrix haar_columns(Index n, Index cols, RandomStream &rng)
{
    CMatrix z(n, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < n; ++i)
            z(i, j) = rng.complex_normal();
    Eigen::HouseholderQR<CMatrix> qr(z);
    CMatrix q = qr.householderQ() * CMatrix::Identity(n, cols);
    for (Index j = 0; j < cols; ++j)
    {
        const cdouble r = qr.matrixQR()(j, j);
        const double mag = std::abs(r);
        if (mag > 0.0)
            q.col(j) *= r / mag;
    }
    return q;
}
} // namespace detail

inline RegulationMatrix haar_random_unitary(Index n, RandomStream &rng)
{
    if (n < 1)
        throw DomainError("haar_random_unitary: n must be positive");
    return RegulationMatrix::full(detail::haar_columns(n, n, rng));
}

// Haar-random unitary restricted to the column span S of `span_columns`:
// returns P T P^H where P is an orthonormal basis of S and T is distributed as
// the leading d x d block of an N x N Haar unitary. For any h, g with columns in
// S, h^H (P T P^H) g has the same distribution as h^H Q g with Q Haar, and no
// N x N matrix is formed.
inline RegulationMatrix haar_unitary_restricted(const CMatrix &span_columns, RandomStream &rng)
{
    const Index n = span_columns.rows();
    if (n < 1 || span_columns.cols() < 1)
        throw DomainError("haar_unitary_restricted: empty subspace");
    require_finite(span_columns, "subspace");

    Eigen::ColPivHouseholderQR<CMatrix> qr(span_columns);
    qr.setThreshold(1e-10);
    const Index d = std::max<Index>(qr.rank(), 1);
    const CMatrix p = qr.householderQ() * CMatrix::Identity(n, d);
    const CMatrix t = detail::haar_columns(n, d, rng).topRows(d);
    return RegulationMatrix::thin(p * t, p.adjoint());
}

// theta_i = exp(j arg Theta_ii), or 1 where |Theta_ii| < 1e-15
inline RegulationMatrix project_full_to_diagonal(const RegulationMatrix &theta)
{
    if (!theta.is_full())
        throw DomainError("project_full_to_diagonal expects a full representation");
    const auto &m = theta.as_full().matrix;
    CVector phases(m.rows());
    for (Index i = 0; i < m.rows(); ++i)
    {
        const cdouble d = m(i, i);
        phases(i) = std::abs(d) < 1e-15 ? cdouble(1.0) : d / std::abs(d);
    }
    return RegulationMatrix::diagonal(std::move(phases));
}

// alpha_k = rho_k exp(-j theta_k) with sum_k |alpha_k| <= 1
struct PAWeights
{
    std::vector<cdouble> alphas;

    static PAWeights equal(std::size_t k)
    {
        return {std::vector<cdouble>(k, cdouble(1.0 / static_cast<double>(k), 0.0))};
    }

    static PAWeights from_polar(std::span<const double> rho, std::span<const double> phase)
    {
        if (rho.size() != phase.size())
            throw DomainError("PA weight magnitudes and phases differ in length");
        PAWeights w;
        for (std::size_t k = 0; k < rho.size(); ++k)
            w.alphas.push_back(std::polar(rho[k], -phase[k]));
        return w;
    }

    double modulus_sum() const
    {
        double s = 0.0;
        for (const auto &a : alphas)
            s += std::abs(a);
        return s;
    }

    void validate() const
    {
        if (alphas.empty())
            throw DomainError("PA weights must be nonempty");
        const double s = modulus_sum();
        if (!(s <= 1.0 + 1e-12))
            throw DomainError("PA weights violate passivity: sum |alpha_k| = " + std::to_string(s) + " > 1");
    }
};

// Theta_mu = sum_k alpha_k Theta_k. Thin inputs stay thin by stacking the
// weighted factors, [a_1 A_1, ..., a_K A_K] [B_1; ...; B_K]. Any other mix is
// materialized as a full matrix.
inline RegulationMatrix pa_combine(std::span<const RegulationMatrix> thetas, const PAWeights &weights)
{
    if (thetas.empty())
        throw DomainError("pa_combine requires at least one regulation matrix");
    if (weights.alphas.size() != thetas.size())
        throw DomainError("pa_combine: " + std::to_string(weights.alphas.size()) + " weights for " +
                          std::to_string(thetas.size()) + " regulation matrices");
    weights.validate();
    const Index n = thetas.front().n();
    for (const auto &t : thetas)
        if (t.n() != n)
            throw DomainError("pa_combine: regulation matrices differ in size (" + std::to_string(t.n()) + " vs " +
                              std::to_string(n) + ")");

    if (thetas.size() == 1 && std::abs(std::abs(weights.alphas[0]) - 1.0) == 0.0)
    {
        const cdouble a = weights.alphas[0];
        const auto &t = thetas.front();
        switch (t.representation())
        {
        case Representation::full:
            return RegulationMatrix::full(a * t.as_full().matrix);
        case Representation::diagonal:
            return RegulationMatrix::diagonal(a * t.as_diagonal().phases);
        case Representation::thin:
            return RegulationMatrix::thin(a * t.as_thin().a, t.as_thin().b);
        }
    }

    bool all_thin = true;
    Index total_rank = 0;
    for (const auto &t : thetas)
    {
        all_thin = all_thin && t.is_thin();
        if (t.is_thin())
            total_rank += t.as_thin().a.cols();
    }

    if (all_thin && total_rank <= n)
    {
        CMatrix a(n, total_rank);
        CMatrix b(total_rank, n);
        Index col = 0;
        for (std::size_t k = 0; k < thetas.size(); ++k)
        {
            const auto &t = thetas[k].as_thin();
            const Index r = t.a.cols();
            a.middleCols(col, r) = weights.alphas[k] * t.a;
            b.middleRows(col, r) = t.b;
            col += r;
        }
        return RegulationMatrix::thin(std::move(a), std::move(b));
    }

    CMatrix sum = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < thetas.size(); ++k)
        sum += weights.alphas[k] * thetas[k].to_dense();
    return RegulationMatrix::full(std::move(sum));
}

} // namespace risdc

#endif
