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

#ifndef RISDC_REGULATION_HPP
#define RISDC_REGULATION_HPP

#include <string>
#include <utility>
#include <variant>

#include "errors.hpp"
#include "linalg.hpp"

namespace risdc
{

enum class Representation
{
    full,
    diagonal,
    thin
};

inline const char *to_string(Representation r)
{
    switch (r)
    {
    case Representation::full:
        return "full";
    case Representation::diagonal:
        return "diagonal";
    case Representation::thin:
        return "thin";
    }
    return "unknown";
}

struct FullTheta
{
    CMatrix matrix; // N x N
};

struct DiagonalTheta
{
    CVector phases; // length N, unit modulus
};

struct ThinTheta
{
    CMatrix a; // N x r
    CMatrix b; // r x N
};

// The RIS regulation operator Theta in one of three storage forms.
class RegulationMatrix
{
  public:
    static RegulationMatrix full(CMatrix m)
    {
        if (m.rows() != m.cols() || m.rows() == 0)
            throw DomainError("full regulation matrix must be square and nonempty, got " + shape_string(m));
        return RegulationMatrix(FullTheta{std::move(m)});
    }

    static RegulationMatrix diagonal(CVector phases)
    {
        if (phases.size() == 0)
            throw DomainError("diagonal regulation matrix must be nonempty");
        return RegulationMatrix(DiagonalTheta{std::move(phases)});
    }

    static RegulationMatrix thin(CMatrix a, CMatrix b)
    {
        if (a.cols() != b.rows() || a.rows() != b.cols() || a.rows() == 0)
            throw DomainError("thin factors must be N x r and r x N, got " + shape_string(a) + " and " + shape_string(b));
        return RegulationMatrix(ThinTheta{std::move(a), std::move(b)});
    }

    Representation representation() const { return static_cast<Representation>(rep_.index()); }
    bool is_full() const { return representation() == Representation::full; }
    bool is_diagonal() const { return representation() == Representation::diagonal; }
    bool is_thin() const { return representation() == Representation::thin; }

    Index n() const
    {
        return std::visit(
            [](const auto &t) -> Index {
                using T = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<T, FullTheta>)
                    return t.matrix.rows();
                else if constexpr (std::is_same_v<T, DiagonalTheta>)
                    return t.phases.size();
                else
                    return t.a.rows();
            },
            rep_);
    }

    const FullTheta &as_full() const { return std::get<FullTheta>(rep_); }
    const DiagonalTheta &as_diagonal() const { return std::get<DiagonalTheta>(rep_); }
    const ThinTheta &as_thin() const { return std::get<ThinTheta>(rep_); }

    // Materializes the N x N matrix. Only meant for small N and for tests.
    CMatrix to_dense() const
    {
        switch (representation())
        {
        case Representation::full:
            return as_full().matrix;
        case Representation::diagonal:
            return as_diagonal().phases.asDiagonal();
        case Representation::thin:
            return as_thin().a * as_thin().b;
        }
        return {};
    }

    // Theta * x for an N-row block x
    CMatrix apply(const CMatrix &x) const
    {
        if (x.rows() != n())
            throw DomainError("regulation matrix has n = " + std::to_string(n()) + ", operand is " + shape_string(x));
        switch (representation())
        {
        case Representation::full:
            return as_full().matrix * x;
        case Representation::diagonal:
            return as_diagonal().phases.asDiagonal() * x;
        case Representation::thin:
            return as_thin().a * (as_thin().b * x);
        }
        return {};
    }

    // Never forms an N x N matrix for diagonal or thin storage
    double spectral_norm() const
    {
        switch (representation())
        {
        case Representation::full:
            return risdc::spectral_norm(as_full().matrix);
        case Representation::diagonal:
            return as_diagonal().phases.cwiseAbs().maxCoeff();
        case Representation::thin:
            return spectral_norm_of_product(as_thin().a, as_thin().b);
        }
        return 0.0;
    }

    // Largest | |theta_i| - 1 | of a diagonal representation
    double max_modulus_deviation() const
    {
        const auto &p = as_diagonal().phases;
        return (p.cwiseAbs().array() - 1.0).abs().maxCoeff();
    }

  private:
    using Storage = std::variant<FullTheta, DiagonalTheta, ThinTheta>;
    explicit RegulationMatrix(Storage s) : rep_(std::move(s)) {}
    Storage rep_;
};

} // namespace risdc

#endif
