// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/intlinalg.hpp"

#include <limits>

namespace latfft {

IntMatrix identity_matrix(Eigen::Index d) {
    IntMatrix id(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) id(i, j) = (i == j) ? 1 : 0;
    return id;
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    const BigInt det = determinant(m);
    return det == 1 || det == -1;
}

RationalMatrix inverse_rational(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrix("matrix is not square");
    const Eigen::Index d = m.rows();
    RationalMatrix a = convert<Rational>(m);
    RationalMatrix inv = convert<Rational>(identity_matrix(d));
    for (Eigen::Index col = 0; col < d; ++col) {
        Eigen::Index pivot = col;
        while (pivot < d && a(pivot, col) == 0) ++pivot;
        if (pivot == d) throw SingularMatrix("determinant is zero");
        if (pivot != col) {
            a.row(pivot).swap(a.row(col));
            inv.row(pivot).swap(inv.row(col));
        }
        const Rational scale = a(col, col);
        for (Eigen::Index j = 0; j < d; ++j) {
            a(col, j) /= scale;
            inv(col, j) /= scale;
        }
        for (Eigen::Index i = 0; i < d; ++i) {
            if (i == col || a(i, col) == 0) continue;
            const Rational factor = a(i, col);
            for (Eigen::Index j = 0; j < d; ++j) {
                a(i, j) -= factor * a(col, j);
                inv(i, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

bool is_integral(const RationalMatrix& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            if (m(i, j).get_den() != 1) return false;
    return true;
}

IntMatrix to_integer(const RationalMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (m(i, j).get_den() != 1) throw Unsupported("matrix entry is not an integer");
            out(i, j) = m(i, j).get_num();
        }
    }
    return out;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    if (!is_unimodular(m)) throw Unsupported("matrix is not unimodular");
    return to_integer(inverse_rational(m));
}

IntMatrix SmithDecomposition::diagonal() const {
    const auto d = static_cast<Eigen::Index>(e.size());
    IntMatrix out = IntMatrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) out(i, i) = e[static_cast<std::size_t>(i)];
    return out;
}

namespace {

// The working state keeps q * a * r equal to the input after every step.
struct SmithState {
    IntMatrix q, a, r;

    void swap_rows(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        a.row(i).swap(a.row(j));
        q.col(i).swap(q.col(j));
    }
    void swap_cols(Eigen::Index i, Eigen::Index j) {
        if (i == j) return;
        a.col(i).swap(a.col(j));
        r.row(i).swap(r.row(j));
    }
    // row_i += c * row_j
    void add_row(Eigen::Index i, Eigen::Index j, const BigInt& c) {
        for (Eigen::Index k = 0; k < a.cols(); ++k) a(i, k) += c * a(j, k);
        for (Eigen::Index k = 0; k < q.rows(); ++k) q(k, j) -= c * q(k, i);
    }
    // col_i += c * col_j
    void add_col(Eigen::Index i, Eigen::Index j, const BigInt& c) {
        for (Eigen::Index k = 0; k < a.rows(); ++k) a(k, i) += c * a(k, j);
        for (Eigen::Index k = 0; k < r.cols(); ++k) r(j, k) -= c * r(i, k);
    }
    void negate_row(Eigen::Index i) {
        a.row(i) = -a.row(i);
        q.col(i) = -q.col(i);
    }
};

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrix("matrix is not square");
    if (determinant(m) == 0) throw SingularMatrix("determinant is zero");
    const Eigen::Index d = m.rows();
    SmithState s{identity_matrix(d), m, identity_matrix(d)};

    for (Eigen::Index t = 0; t < d; ++t) {
        for (;;) {
            Eigen::Index pi = -1, pj = -1;
            BigInt best;
            for (Eigen::Index i = t; i < d; ++i) {
                for (Eigen::Index j = t; j < d; ++j) {
                    if (s.a(i, j) == 0) continue;
                    const BigInt mag = abs(s.a(i, j));
                    if (pi < 0 || mag < best) {
                        best = mag;
                        pi = i;
                        pj = j;
                    }
                }
            }
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);

            bool remainder = false;
            for (Eigen::Index i = t + 1; i < d; ++i) {
                if (s.a(i, t) == 0) continue;
                const BigInt c = s.a(i, t) / s.a(t, t);
                if (c != 0) s.add_row(i, t, -c);
                remainder = remainder || s.a(i, t) != 0;
            }
            for (Eigen::Index j = t + 1; j < d; ++j) {
                if (s.a(t, j) == 0) continue;
                const BigInt c = s.a(t, j) / s.a(t, t);
                if (c != 0) s.add_col(j, t, -c);
                remainder = remainder || s.a(t, j) != 0;
            }
            if (remainder) continue;

            Eigen::Index bad = -1;
            for (Eigen::Index i = t + 1; i < d && bad < 0; ++i)
                for (Eigen::Index j = t + 1; j < d && bad < 0; ++j)
                    if (s.a(i, j) % s.a(t, t) != 0) bad = i;
            if (bad < 0) break;
            s.add_row(t, bad, BigInt(1));
        }
        if (s.a(t, t) < 0) s.negate_row(t);
    }

    SmithDecomposition out;
    out.q = std::move(s.q);
    out.r = std::move(s.r);
    out.e.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 0; i < d; ++i) out.e.push_back(s.a(i, i));
    return out;
}

bool verify_smith(const IntMatrix& m, const SmithDecomposition& snf) {
    const auto d = m.rows();
    if (snf.q.rows() != d || snf.r.rows() != d || static_cast<Eigen::Index>(snf.e.size()) != d)
        return false;
    if (!is_unimodular(snf.q) || !is_unimodular(snf.r)) return false;
    BigInt product = 1;
    for (std::size_t j = 0; j < snf.e.size(); ++j) {
        if (snf.e[j] < 1) return false;
        if (j + 1 < snf.e.size() && snf.e[j + 1] % snf.e[j] != 0) return false;
        product *= snf.e[j];
    }
    if (product != abs(BigInt(determinant(m)))) return false;
    return snf.product() == m;
}

std::int64_t to_long(const BigInt& v) {
    if (!v.fits_slong_p()) throw Unsupported("integer exceeds 64-bit range: " + v.get_str());
    return static_cast<std::int64_t>(v.get_si());
}

LongMatrix to_long(const IntMatrix& m) {
    LongMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_long(m(i, j));
    return out;
}

IntMatrix from_long(const LongMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = static_cast<long>(m(i, j));
    return out;
}

} // namespace latfft
