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

#ifndef RISDC_LINALG_HPP
#define RISDC_LINALG_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"

namespace risdc
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline std::string shape_string(Index rows, Index cols)
{
    return std::to_string(rows) + "x" + std::to_string(cols);
}

inline std::string shape_string(const CMatrix &m) { return shape_string(m.rows(), m.cols()); }

inline bool all_finite(const CMatrix &m) { return m.allFinite(); }

inline void require_finite(const CMatrix &m, const char *what)
{
    if (!m.allFinite())
        throw DomainError(std::string(what) + " contains non-finite entries");
}

// Thin SVD  A = U diag(s) V^H  with r = min(rows, cols) columns in U and V.
// Singular values are sorted descending. The first entry of each left singular
// vector with modulus above 1e-12 is made real-positive; the removed phase is
// applied to the matching right singular vector, so the product is unchanged.
struct SvdFactors
{
    CMatrix u;
    RVector s;
    CMatrix v;

    Index rank_bound() const { return s.size(); }

    CMatrix reconstruct() const { return u * s.cast<cdouble>().asDiagonal() * v.adjoint(); }
};

inline void normalize_svd_phases(SvdFactors &f)
{
    constexpr double threshold = 1e-12;
    for (Index j = 0; j < f.u.cols(); ++j)
    {
        for (Index i = 0; i < f.u.rows(); ++i)
        {
            const double mag = std::abs(f.u(i, j));
            if (mag > threshold)
            {
                const cdouble fix = std::conj(f.u(i, j)) / mag;
                f.u.col(j) *= fix;
                if (j < f.v.cols())
                    f.v.col(j) *= fix;
                break;
            }
        }
    }
}

inline SvdFactors thin_svd(const CMatrix &a, const char *what = "matrix")
{
    if (a.rows() == 0 || a.cols() == 0)
        throw DomainError(std::string("SVD of empty ") + what);
    require_finite(a, what);

    // Two-sided Jacobi after a column-pivoted QR. Eigen's divide-and-conquer SVD
    // returns NaN factors on some tall rank-one LoS channels.
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError(std::string("SVD did not converge for ") + what + " (" + shape_string(a) + ")");

    SvdFactors f{svd.matrixU(), svd.singularValues(), svd.matrixV()};
    if (!f.u.allFinite() || !f.v.allFinite() || !f.s.allFinite())
        throw NumericalError(std::string("SVD produced non-finite factors for ") + what + " (" + shape_string(a) + ")");
    normalize_svd_phases(f);
    return f;
}

inline RVector singular_values(const CMatrix &a)
{
    if (a.size() == 0)
        return RVector();
    Eigen::BDCSVD<CMatrix> svd(a);
    if (svd.info() == Eigen::Success && svd.singularValues().allFinite())
        return svd.singularValues();
    Eigen::JacobiSVD<CMatrix> fallback(a);
    if (fallback.info() != Eigen::Success || !fallback.singularValues().allFinite())
        throw NumericalError("SVD did not converge (" + shape_string(a) + ")");
    return fallback.singularValues();
}

inline double spectral_norm(const CMatrix &a)
{
    if (a.size() == 0)
        return 0.0;
    return singular_values(a)(0);
}

// Spectral norm of A*B without forming the product: with A = Qa Ra and
// B^H = Qb Rb, ||A B||_2 = ||Ra Rb^H||_2.
inline double spectral_norm_of_product(const CMatrix &a, const CMatrix &b)
{
    if (a.cols() != b.rows())
        throw DomainError("inner dimensions differ: " + shape_string(a) + " * " + shape_string(b));
    if (a.cols() >= a.rows() || b.rows() >= b.cols())
        return spectral_norm(a * b);
    const Index r = a.cols();
    Eigen::HouseholderQR<CMatrix> qa(a);
    Eigen::HouseholderQR<CMatrix> qb(b.adjoint());
    const CMatrix ra = qa.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    const CMatrix rb = qb.matrixQR().topRows(r).triangularView<Eigen::Upper>();
    return spectral_norm(ra * rb.adjoint());
}

// Extends the orthonormal columns of q to a full n x n unitary. The leading
// columns are q itself; the completion spans the orthogonal complement.
inline CMatrix complete_orthonormal(const CMatrix &q)
{
    const Index n = q.rows();
    if (q.cols() > n)
        throw DomainError("cannot complete " + shape_string(q) + " to a square unitary");
    if (q.cols() == n)
        return q;
    Eigen::HouseholderQR<CMatrix> qr(q);
    CMatrix full = qr.householderQ();
    full.leftCols(q.cols()) = q;
    return full;
}

// ||X X^H - I||_F
inline double unitarity_error(const CMatrix &x)
{
    return (x * x.adjoint() - CMatrix::Identity(x.rows(), x.rows())).norm();
}

// Number of singular values above rel_tol * s_max
inline Index numerical_rank(const RVector &s, double rel_tol = 1e-9)
{
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    const double cut = rel_tol * s(0);
    return static_cast<Index>(std::count_if(s.begin(), s.end(), [cut](double v) { return v > cut; }));
}

} // namespace risdc

#endif
