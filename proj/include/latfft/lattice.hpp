// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/intlinalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace latfft {

/// Representative window for pattern points.
enum class Window {
    Unit,     ///< [0,1)^d
    Centered  ///< [-1/2,1/2)^d
};

/// A point of the lattice M^{-1}Z^d reduced into a window.
struct PatternPoint {
    RationalVector value;
    Window home = Window::Unit;
};

/// Bases of the pattern P(M) and of the generating group G(M^T), built from
/// the Smith normal form M = Q diag(eps) R.
///
/// Only the axes with eps > 1 carry a basis vector; `cycle_lengths` lists
/// those eps in SNF order, so the multi-index set is the box
/// [0, cycle_lengths[0]) x ... addressed in row-major order.
struct PatternBasis {
    IntMatrix matrix;
    SmithDecomposition snf;
    int dim_pattern = 0;                       ///< d_M
    std::vector<std::int64_t> cycle_lengths;   ///< eps_{d-d_M+1}, ..., eps_d
    std::vector<RationalVector> pattern_vectors;
    std::vector<IntVector> generator_vectors;

    // 64-bit working copies used by the enumeration and index maps.
    std::int64_t det_abs = 1;       ///< m = |det M|
    LongMatrix matrix_long;         ///< M
    LongMatrix scaled_inverse;      ///< m * M^{-1} (integral)
    LongMatrix r_long;              ///< R
    LongMatrix r_inverse_t;         ///< R^{-T}
    LongMatrix pattern_scaled;      ///< columns m * y_j
    LongMatrix generator_long;      ///< columns h_j

    Eigen::Index dim() const { return matrix.rows(); }
    std::int64_t size() const { return det_abs; }
};

/// y_j = R^{-1} e_k / eps_k for every axis k with eps_k > 1.
std::vector<RationalVector> pattern_basis_vectors(const IntMatrix& r, const std::vector<BigInt>& e);
/// h_j = R^T e_k for every axis k with eps_k > 1.
std::vector<IntVector> generator_basis_vectors(const IntMatrix& r, const std::vector<BigInt>& e);

PatternBasis build_basis(const IntMatrix& m);

// Multi-index helpers over a row-major box.
std::int64_t flatten(const MultiIndex& index, const std::vector<std::int64_t>& shape);
MultiIndex unflatten(std::int64_t flat, const std::vector<std::int64_t>& shape);
/// Componentwise reduction into [0, shape_j).
MultiIndex reduce_index(MultiIndex index, const std::vector<std::int64_t>& shape);

/// Reduces a lattice point into the requested window. Throws NotInLattice
/// when M x is not integral.
PatternPoint modulo_pattern(const RationalVector& x, const PatternBasis& basis, Window window);

/// All pattern points in lexicographic multi-index order.
std::vector<PatternPoint> enumerate_pattern(const PatternBasis& basis, Window window);

/// Pattern points as integer numerators over m (column t is m * y for the
/// point with flat index t). Same order as enumerate_pattern.
LongMatrix enumerate_pattern_scaled(const PatternBasis& basis, Window window);

/// Reduction of an integer vector into the window M^T [-1/2,1/2)^d.
LongVector reduce_generator(const LongVector& k, const PatternBasis& basis);

/// G(M^T) in lexicographic multi-index order, one element per column.
LongMatrix enumerate_generators(const PatternBasis& basis);

/// Coordinates of a pattern point. Throws NotInPattern when x is not a
/// lattice point lying in its declared window.
MultiIndex point_to_index(const PatternPoint& x, const PatternBasis& basis);

/// Coordinates of the congruence class of k modulo M^T Z^d. Defined for any
/// integer vector (a homomorphism Z^d -> index box).
MultiIndex generator_to_index(const LongVector& k, const PatternBasis& basis);

/// Unique splitting y = x + N^{-1} z (mod 1) with x in P(N), z in P(J) for
/// M = J N. Both parts are returned in y's window. Throws BadFactorization
/// when J N != M and NotInPattern when y is not a point of P(M).
std::pair<PatternPoint, PatternPoint> split_point(const PatternPoint& y, const IntMatrix& m,
                                                  const IntMatrix& j, const IntMatrix& n);

/// Integer matrix P (d_M x d_N) with lambda = P mu (mod cycle lengths of M)
/// for points of P(N) inside P(M). Throws NotASubpattern unless M N^{-1} is
/// integral.
LongMatrix projection_matrix(const PatternBasis& n_basis, const PatternBasis& m_basis);

/// Frequency-side counterpart: column k is the M-coordinate of the k-th
/// generator basis vector of G(N^T). Maps mu in the N box to the M-index of
/// the representative sum_k mu_k h^N_k.
LongMatrix frequency_projection(const PatternBasis& n_basis, const PatternBasis& m_basis);

/// Outcome of the scaling-property check for M = J N with d_J = 1.
///
/// Let z_1 be the basis vector of P(J), eps = eps_d^J and w = N^{-1} z_1.
/// Since eps w lies in P(N) with coordinates mu, the case is decided by
/// whether some lift of z_1 modulo Z^d makes w an element of order dividing
/// eps, i.e. whether eps nu = mu (mod cycle lengths of N) is solvable:
///  - case 1 (solvable): w is replaced by that lift w - sum nu_k y_k, which
///    starts a new cycle; expected d_M = d_N + 1 and P(M) = P(N) (+) <w>.
///    Whether some lift is a multiple lambda_l x_l of a single M-basis
///    vector with eps_l^M = eps depends on the SNF basis; it is reported in
///    `axis` but not required.
///  - case 2 (not solvable): w extends an existing cycle; expected d_M = d_N
///    and eps lambda = P mu (mod cycle lengths of M).
struct ScalingReport {
    int case_tag = 0;  ///< 1: a new cycle appears, 2: an existing cycle grows
    int dim_m = 0;
    int dim_n = 0;
    std::int64_t scale = 0;   ///< eps_d of J
    MultiIndex lambda;        ///< M-coordinates of w (of its lift in case 1)
    MultiIndex mu;            ///< N-coordinates of eps * w
    bool dims_ok = false;     ///< d_M = d_N + 1 (case 1) or d_M = d_N (case 2)

    // Case 1.
    bool complement_ok = false;  ///< the lift has order eps and meets P(N) only in 0, so P(M) = P(N) (+) <w>
    std::optional<int> axis;  ///< l with w = lambda_l x_l, when w is a single-axis multiple
    bool cycle_ok = false;    ///< eps_l^M = eps for that axis

    // Case 2.
    LongMatrix projection;    ///< P from projection_matrix(N, M)
    bool scaling_ok = false;  ///< eps lambda = P mu (mod cycle lengths of M)

    bool verified() const;
};

/// Throws Unsupported when d_J != 1.
ScalingReport scaling_case(const IntMatrix& j, const IntMatrix& n);

/// Rational value of a scaled numerator vector p / m.
RationalVector unscale(const LongVector& numerators, std::int64_t m);

} // namespace latfft
