// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/types.hpp"

#include <utility>
#include <vector>

namespace latfft {

/// Exact determinant by fraction-free (Bareiss) elimination.
///
/// Works for any exact integer scalar: BigInt, or a machine integer when the
/// caller knows the intermediate minors fit.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
    using Scalar = typename Derived::Scalar;
    eigen_assert(m.rows() == m.cols());
    const Eigen::Index d = m.rows();
    if (d == 0) return Scalar(1);
    MatrixX<Scalar> a = m;
    Scalar sign(1);
    Scalar previous(1);
    for (Eigen::Index k = 0; k + 1 < d; ++k) {
        if (a(k, k) == 0) {
            Eigen::Index swap = k + 1;
            while (swap < d && a(swap, k) == 0) ++swap;
            if (swap == d) return Scalar(0);
            a.row(k).swap(a.row(swap));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < d; ++i) {
            for (Eigen::Index j = k + 1; j < d; ++j) {
                // Exact by Sylvester's identity.
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / previous;
            }
        }
        previous = a(k, k);
    }
    return sign * a(d - 1, d - 1);
}

/// Elementwise conversion between exact scalar types.
template <typename To, typename Derived>
MatrixX<To> convert(const Eigen::MatrixBase<Derived>& m) {
    MatrixX<To> out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = To(m(i, j));
    return out;
}

IntMatrix identity_matrix(Eigen::Index d);

bool is_unimodular(const IntMatrix& m);

/// Exact inverse over the rationals. Throws SingularMatrix when det(m) = 0.
RationalMatrix inverse_rational(const IntMatrix& m);

/// Inverse of a unimodular matrix, which is again integral.
IntMatrix inverse_unimodular(const IntMatrix& m);

/// True when every entry of `m` is an integer.
bool is_integral(const RationalMatrix& m);
IntMatrix to_integer(const RationalMatrix& m);

/// M = Q * diag(e) * R with Q, R unimodular, e_j > 0 and e_j | e_{j+1}.
struct SmithDecomposition {
    IntMatrix q;
    std::vector<BigInt> e;
    IntMatrix r;

    IntMatrix diagonal() const;
    /// Product of the factors; equals the decomposed matrix.
    IntMatrix product() const { return q * diagonal() * r; }
};

/// Smith normal form by row/column Euclidean reduction.
///
/// The pivot is the entry of smallest nonzero magnitude in the active block
/// (ties broken by lowest row, then column). After the pivot row and column
/// are cleared, any entry the pivot does not divide is absorbed by adding
/// its row to the pivot row, which forces a smaller gcd pivot. Elementary
/// divisors come out positive; signs go into Q.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Checks all structural invariants of a decomposition of `m`.
bool verify_smith(const IntMatrix& m, const SmithDecomposition& snf);

/// Narrowing to 64-bit with overflow detection (throws Unsupported).
std::int64_t to_long(const BigInt& v);
LongMatrix to_long(const IntMatrix& m);
IntMatrix from_long(const LongMatrix& m);

} // namespace latfft
