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

#ifndef RISDC_RANDOM_HPP
#define RISDC_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace risdc
{

// Identifies one independent random stream. Streams are derived by hashing the
// key fields, so a draw depends only on the key and never on scheduling order.
struct StreamKey
{
    std::uint64_t master_seed = 0;
    std::uint64_t trial_index = 0;
    std::uint64_t link_id = 0;
    std::uint64_t purpose = 0;

    friend bool operator==(const StreamKey &, const StreamKey &) = default;
};

// Stream purposes
namespace purpose
{
inline constexpr std::uint64_t channel = 0x43484e4cULL;      // path gains and angles
inline constexpr std::uint64_t random_phase = 0x524e4450ULL; // random diagonal baseline
inline constexpr std::uint64_t haar = 0x48414152ULL;         // unexpected regulation
} // namespace purpose

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(const StreamKey &key) noexcept
{
    std::uint64_t h = mix64(key.master_seed);
    h = mix64(h ^ mix64(key.trial_index + 0x1000193ULL));
    h = mix64(h ^ mix64(key.link_id + 0x2545f491ULL));
    h = mix64(h ^ mix64(key.purpose + 0x7f4a7c15ULL));
    return h;
}

// Uniform and Gaussian variates on top of mt19937_64. The transforms are written
// out explicitly because the std distributions are not bit-reproducible across
// standard library implementations.
class RandomStream
{
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
    explicit RandomStream(const StreamKey &key) : engine_(derive_seed(key)) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1) with 53 bits of resolution
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal by Box-Muller
    double normal()
    {
        double u1 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Circularly-symmetric complex normal with unit variance
    std::complex<double> complex_normal()
    {
        const double re = normal();
        const double im = normal();
        return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
    }

    std::complex<double> unit_phasor() { return std::polar(1.0, uniform(0.0, 2.0 * std::numbers::pi)); }

  private:
    std::mt19937_64 engine_;
};

} // namespace risdc

#endif
