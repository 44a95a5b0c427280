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

#ifndef RISDC_CHANNEL_HPP
#define RISDC_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "linalg.hpp"
#include "random.hpp"

namespace risdc
{

enum class ArrayKind
{
    ula,
    upa
};

inline const char *to_string(ArrayKind k) { return k == ArrayKind::ula ? "ULA" : "UPA"; }

// Far-field array layout. Elements are indexed row-major with the second axis
// fastest: element (ix, iy) has index ix * ny + iy.
struct ArrayGeometry
{
    ArrayKind kind = ArrayKind::ula;
    Index nx = 1;
    Index ny = 1;
    double spacing = 0.5; // in carrier wavelengths

    static ArrayGeometry ula(Index n, double spacing = 0.5) { return {ArrayKind::ula, n, 1, spacing}; }
    static ArrayGeometry upa(Index nx, Index ny, double spacing = 0.5) { return {ArrayKind::upa, nx, ny, spacing}; }

    Index n() const { return nx * ny; }

    void validate() const
    {
        if (nx < 1 || ny < 1)
            throw ConfigError("array element counts must be positive, got " + shape_string(nx, ny));
        if (!(spacing > 0.0) || !std::isfinite(spacing))
            throw ConfigError("array spacing must be positive and finite");
        if (kind == ArrayKind::ula && ny != 1)
            throw ConfigError("ULA geometry requires ny = 1, got ny = " + std::to_string(ny));
    }

    friend bool operator==(const ArrayGeometry &, const ArrayGeometry &) = default;
};

struct PathComponent
{
    cdouble gain{1.0, 0.0};
    double azimuth_tx = 0.0;
    double elevation_tx = 0.0;
    double azimuth_rx = 0.0;
    double elevation_rx = 0.0;
};

struct ChannelConfig
{
    double carrier_hz = 28e9;
    int num_paths = 1;
    bool los_only = true;

    // Paths actually drawn: the LoS path alone, or LoS plus num_paths - 1 scattered paths
    int effective_paths() const { return los_only ? 1 : num_paths; }

    void validate() const
    {
        if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
            throw ConfigError("carrier_hz must be positive");
        if (num_paths < 1)
            throw ConfigError("num_paths must be at least 1");
    }
};

inline void check_angles(double azimuth, double elevation)
{
    constexpr double pi = std::numbers::pi;
    if (!std::isfinite(azimuth) || !std::isfinite(elevation))
        throw DomainError("steering angles must be finite");
    if (azimuth < -pi || azimuth > pi)
        throw DomainError("azimuth " + std::to_string(azimuth) + " outside [-pi, pi]");
    if (elevation < -pi / 2 || elevation > pi / 2)
        throw DomainError("elevation " + std::to_string(elevation) + " outside [-pi/2, pi/2]");
}

// a(ix, iy) = exp(j 2 pi d (ix sin(az) cos(el) + iy sin(el)))
inline CVector steering_vector(const ArrayGeometry &geom, double azimuth, double elevation)
{
    geom.validate();
    check_angles(azimuth, elevation);

    const double k = 2.0 * std::numbers::pi * geom.spacing;
    const double ux = std::sin(azimuth) * std::cos(elevation);
    const double uy = std::sin(elevation);

    CVector a(geom.n());
    for (Index ix = 0; ix < geom.nx; ++ix)
        for (Index iy = 0; iy < geom.ny; ++iy)
        {
            const double phase = k * (static_cast<double>(ix) * ux + static_cast<double>(iy) * uy);
            a(ix * geom.ny + iy) = std::polar(1.0, phase);
        }
    return a;
}

// sqrt(1/P) sum_p gain_p a_rx(p) a_tx(p)^H, shape rx.n x tx.n
inline CMatrix synthesize_channel(const ArrayGeometry &tx, const ArrayGeometry &rx, std::span<const PathComponent> paths)
{
    if (paths.empty())
        throw DomainError("synthesize_channel requires at least one path");
    tx.validate();
    rx.validate();

    CMatrix h = CMatrix::Zero(rx.n(), tx.n());
    for (const auto &p : paths)
    {
        const CVector a_tx = steering_vector(tx, p.azimuth_tx, p.elevation_tx);
        const CVector a_rx = steering_vector(rx, p.azimuth_rx, p.elevation_rx);
        h.noalias() += p.gain * a_rx * a_tx.adjoint();
    }
    h *= std::sqrt(1.0 / static_cast<double>(paths.size()));
    return h;
}

// Path 1 is LoS with a unit-modulus gain; later paths have CN(0, 1) gains.
// All angles are uniform over their valid ranges.
inline std::vector<PathComponent> draw_paths(const ChannelConfig &cfg, RandomStream &rng)
{
    constexpr double pi = std::numbers::pi;
    const int count = cfg.effective_paths();
    std::vector<PathComponent> paths(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p)
    {
        auto &c = paths[static_cast<std::size_t>(p)];
        c.gain = (p == 0) ? rng.unit_phasor() : rng.complex_normal();
        c.azimuth_tx = rng.uniform(-pi, pi);
        c.elevation_tx = rng.uniform(-pi / 2, pi / 2);
        c.azimuth_rx = rng.uniform(-pi, pi);
        c.elevation_rx = rng.uniform(-pi / 2, pi / 2);
    }
    return paths;
}

// Link identifiers within one trial. A link group separates fully independent
// realizations (e.g. one per UE when each UE sees its own BS-RIS channel).
inline constexpr std::uint64_t bs_ris_link_id(std::uint64_t group = 0) { return group << 32; }
inline constexpr std::uint64_t ris_ue_link_id(std::uint64_t ue, std::uint64_t group = 0) { return (group << 32) | (ue + 1); }

struct SeedRecord
{
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    std::uint64_t link_group = 0;
    std::vector<std::uint64_t> link_ids; // G first, then one per UE

    friend bool operator==(const SeedRecord &, const SeedRecord &) = default;
};

// One Monte Carlo draw: g is N x M (RIS x BS), each h is N x K (RIS x UE).
struct LinkRealization
{
    CMatrix g;
    std::vector<CMatrix> h_per_ue;
    SeedRecord seed_record;

    Index ris_elements() const { return g.rows(); }
    Index bs_antennas() const { return g.cols(); }
};

inline CMatrix draw_segment(const ChannelConfig &cfg, const ArrayGeometry &tx, const ArrayGeometry &rx, const StreamKey &key)
{
    RandomStream rng(key);
    const auto paths = draw_paths(cfg, rng);
    return synthesize_channel(tx, rx, paths);
}

inline LinkRealization draw_link(const ChannelConfig &cfg, const ArrayGeometry &tx, const ArrayGeometry &ris,
                                 std::span<const ArrayGeometry> ue_geoms, std::uint64_t master_seed,
                                 std::uint64_t trial_index, std::uint64_t link_group = 0)
{
    cfg.validate();
    tx.validate();
    ris.validate();
    if (ue_geoms.empty())
        throw DomainError("draw_link requires at least one UE geometry");

    LinkRealization link;
    link.seed_record = {master_seed, trial_index, link_group, {}};

    const StreamKey g_key{master_seed, trial_index, bs_ris_link_id(link_group), purpose::channel};
    link.g = draw_segment(cfg, tx, ris, g_key);
    link.seed_record.link_ids.push_back(g_key.link_id);

    // The RIS-UE hop is synthesized in the UE -> RIS direction so that h is N x K
    // and h^H is the K x N downlink channel.
    for (std::size_t k = 0; k < ue_geoms.size(); ++k)
    {
        const StreamKey h_key{master_seed, trial_index, ris_ue_link_id(k, link_group), purpose::channel};
        link.h_per_ue.push_back(draw_segment(cfg, ue_geoms[k], ris, h_key));
        link.seed_record.link_ids.push_back(h_key.link_id);
    }
    return link;
}

} // namespace risdc

#endif
