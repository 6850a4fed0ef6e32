// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/lattice.hpp"

#include <limits>
#include <numeric>

namespace latfft {

namespace {

// Floor division for a positive divisor.
std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && (a < 0)) --q;
    return q;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t b) {
    const std::int64_t r = a % b;
    return r < 0 ? r + b : r;
}

BigInt floor_rational(const Rational& x) {
    BigInt out;
    mpz_fdiv_q(out.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return out;
}

// Numerators scaled by m are kept inside [-2^40, 2^40]; products with the
// small basis matrices then stay far from int64 overflow.
constexpr std::int64_t kMaxDeterminant = std::int64_t{1} << 40;

bool in_window(const RationalVector& x, Window window) {
    const Rational half(1, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (window == Window::Unit) {
            if (x(i) < 0 || x(i) >= 1) return false;
        } else if (x(i) < -half || x(i) >= half) {
            return false;
        }
    }
    return true;
}

void reduce_scaled(LongVector& p, std::int64_t m, Window window) {
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (window == Window::Unit) {
            p(i) = mod_pos(p(i), m);
        } else {
            p(i) -= m * floor_div(2 * p(i) + m, 2 * m);
        }
    }
}

} // namespace

std::vector<RationalVector> pattern_basis_vectors(const IntMatrix& r, const std::vector<BigInt>& e) {
    const RationalMatrix r_inv = inverse_rational(r);
    std::vector<RationalVector> out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] <= 1) continue;
        RationalVector y = r_inv.col(static_cast<Eigen::Index>(k));
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) /= Rational(e[k]);
        out.push_back(std::move(y));
    }
    return out;
}

std::vector<IntVector> generator_basis_vectors(const IntMatrix& r, const std::vector<BigInt>& e) {
    std::vector<IntVector> out;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] <= 1) continue;
        out.push_back(r.row(static_cast<Eigen::Index>(k)).transpose());
    }
    return out;
}

PatternBasis build_basis(const IntMatrix& m) {
    PatternBasis b;
    b.matrix = m;
    b.snf = smith_normal_form(m);
    const Eigen::Index d = m.rows();

    const BigInt det = abs(BigInt(determinant(m)));
    if (det > kMaxDeterminant) throw Unsupported("|det M| exceeds 2^40: " + det.get_str());
    b.det_abs = to_long(det);

    for (const auto& eps : b.snf.e) {
        if (eps > 1) b.cycle_lengths.push_back(to_long(eps));
    }
    b.dim_pattern = static_cast<int>(b.cycle_lengths.size());
    b.pattern_vectors = pattern_basis_vectors(b.snf.r, b.snf.e);
    b.generator_vectors = generator_basis_vectors(b.snf.r, b.snf.e);

    b.matrix_long = to_long(m);
    RationalMatrix inv = inverse_rational(m);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) inv(i, j) *= Rational(det);
    b.scaled_inverse = to_long(to_integer(inv));
    b.r_long = to_long(b.snf.r);
    b.r_inverse_t = to_long(inverse_unimodular(b.snf.r)).transpose();

    b.pattern_scaled.resize(d, b.dim_pattern);
    b.generator_long.resize(d, b.dim_pattern);
    for (int j = 0; j < b.dim_pattern; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const Rational scaled = b.pattern_vectors[static_cast<std::size_t>(j)](i) * Rational(det);
            b.pattern_scaled(i, j) = to_long(BigInt(scaled.get_num()));
            b.generator_long(i, j) = to_long(b.generator_vectors[static_cast<std::size_t>(j)](i));
        }
    }
    return b;
}

std::int64_t flatten(const MultiIndex& index, const std::vector<std::int64_t>& shape) {
    std::int64_t flat = 0;
    for (std::size_t j = 0; j < shape.size(); ++j) flat = flat * shape[j] + index(static_cast<Eigen::Index>(j));
    return flat;
}

MultiIndex unflatten(std::int64_t flat, const std::vector<std::int64_t>& shape) {
    MultiIndex index(static_cast<Eigen::Index>(shape.size()));
    for (std::size_t j = shape.size(); j-- > 0;) {
        index(static_cast<Eigen::Index>(j)) = flat % shape[j];
        flat /= shape[j];
    }
    return index;
}

MultiIndex reduce_index(MultiIndex index, const std::vector<std::int64_t>& shape) {
    for (std::size_t j = 0; j < shape.size(); ++j) {
        auto& v = index(static_cast<Eigen::Index>(j));
        v = mod_pos(v, shape[j]);
    }
    return index;
}

RationalVector unscale(const LongVector& numerators, std::int64_t m) {
    RationalVector out(numerators.size());
    for (Eigen::Index i = 0; i < numerators.size(); ++i) {
        out(i) = Rational(static_cast<long>(numerators(i)), static_cast<unsigned long>(m));
        out(i).canonicalize();
    }
    return out;
}

PatternPoint modulo_pattern(const RationalVector& x, const PatternBasis& basis, Window window) {
    if (x.size() != basis.dim()) throw NotInLattice("dimension mismatch");
    const RationalVector image = convert<Rational>(basis.matrix) * x;
    for (Eigen::Index i = 0; i < image.size(); ++i)
        if (image(i).get_den() != 1) throw NotInLattice("M x is not integral");
    PatternPoint out{x, window};
    const Rational shift = window == Window::Unit ? Rational(0) : Rational(1, 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) out.value(i) -= Rational(floor_rational(x(i) + shift));
    return out;
}

LongMatrix enumerate_pattern_scaled(const PatternBasis& basis, Window window) {
    const Eigen::Index d = basis.dim();
    const std::int64_t m = basis.det_abs;
    LongMatrix out(d, m);
    const auto& shape = basis.cycle_lengths;
    MultiIndex counter = MultiIndex::Zero(static_cast<Eigen::Index>(shape.size()));
    for (std::int64_t t = 0; t < m; ++t) {
        LongVector p = basis.pattern_scaled * counter;
        reduce_scaled(p, m, window);
        out.col(t) = p;
        for (std::size_t j = shape.size(); j-- > 0;) {
            auto& c = counter(static_cast<Eigen::Index>(j));
            if (++c < shape[j]) break;
            c = 0;
        }
    }
    return out;
}

std::vector<PatternPoint> enumerate_pattern(const PatternBasis& basis, Window window) {
    const LongMatrix scaled = enumerate_pattern_scaled(basis, window);
    std::vector<PatternPoint> out;
    out.reserve(static_cast<std::size_t>(scaled.cols()));
    for (Eigen::Index t = 0; t < scaled.cols(); ++t)
        out.push_back(PatternPoint{unscale(scaled.col(t), basis.det_abs), window});
    return out;
}

LongVector reduce_generator(const LongVector& k, const PatternBasis& basis) {
    const std::int64_t m = basis.det_abs;
    // q = m * M^{-T} k
    const LongVector q = basis.scaled_inverse.transpose() * k;
    LongVector z(q.size());
    for (Eigen::Index i = 0; i < q.size(); ++i) z(i) = floor_div(2 * q(i) + m, 2 * m);
    return k - basis.matrix_long.transpose() * z;
}

LongMatrix enumerate_generators(const PatternBasis& basis) {
    const Eigen::Index d = basis.dim();
    const std::int64_t m = basis.det_abs;
    LongMatrix out(d, m);
    const auto& shape = basis.cycle_lengths;
    MultiIndex counter = MultiIndex::Zero(static_cast<Eigen::Index>(shape.size()));
    for (std::int64_t t = 0; t < m; ++t) {
        out.col(t) = reduce_generator(basis.generator_long * counter, basis);
        for (std::size_t j = shape.size(); j-- > 0;) {
            auto& c = counter(static_cast<Eigen::Index>(j));
            if (++c < shape[j]) break;
            c = 0;
        }
    }
    return out;
}

MultiIndex point_to_index(const PatternPoint& x, const PatternBasis& basis) {
    if (x.value.size() != basis.dim()) throw NotInPattern("dimension mismatch");
    if (!in_window(x.value, x.home)) throw NotInPattern("point lies outside its window");
    const RationalVector image = convert<Rational>(basis.matrix) * x.value;
    for (Eigen::Index i = 0; i < image.size(); ++i)
        if (image(i).get_den() != 1) throw NotInPattern("point is not in the lattice of M");

    const RationalVector rx = convert<Rational>(basis.snf.r) * x.value;
    const Eigen::Index first = basis.dim() - basis.dim_pattern;
    MultiIndex lambda(basis.dim_pattern);
    for (int j = 0; j < basis.dim_pattern; ++j) {
        const std::int64_t eps = basis.cycle_lengths[static_cast<std::size_t>(j)];
        const Rational scaled = rx(first + j) * Rational(eps);
        // Integral because E R x = Q^{-1} M x.
        lambda(j) = mod_pos(to_long(BigInt(scaled.get_num())), eps);
    }
    return lambda;
}

MultiIndex generator_to_index(const LongVector& k, const PatternBasis& basis) {
    const LongVector u = basis.r_inverse_t * k;
    const Eigen::Index first = basis.dim() - basis.dim_pattern;
    MultiIndex mu(basis.dim_pattern);
    for (int j = 0; j < basis.dim_pattern; ++j)
        mu(j) = mod_pos(u(first + j), basis.cycle_lengths[static_cast<std::size_t>(j)]);
    return mu;
}

std::pair<PatternPoint, PatternPoint> split_point(const PatternPoint& y, const IntMatrix& m,
                                                  const IntMatrix& j, const IntMatrix& n) {
    if (j.rows() != m.rows() || n.rows() != m.rows() || IntMatrix(j * n) != m)
        throw BadFactorization("J N does not equal M");
    const RationalVector image = convert<Rational>(m) * y.value;
    for (Eigen::Index i = 0; i < image.size(); ++i)
        if (image(i).get_den() != 1) throw NotInPattern("y is not in the lattice of M");
    if (!in_window(y.value, y.home)) throw NotInPattern("y lies outside its window");

    const Rational shift = y.home == Window::Unit ? Rational(0) : Rational(1, 2);
    auto reduce = [&](RationalVector v) {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) -= Rational(floor_rational(v(i) + shift));
        return v;
    };
    // N y lies in the lattice of J; its class mod 1 is the z part.
    const RationalVector z = reduce(convert<Rational>(n) * y.value);
    const RationalVector x = reduce(y.value - inverse_rational(n) * z);
    return {PatternPoint{x, y.home}, PatternPoint{z, y.home}};
}

LongMatrix projection_matrix(const PatternBasis& n_basis, const PatternBasis& m_basis) {
    const RationalMatrix quotient = convert<Rational>(m_basis.matrix) * inverse_rational(n_basis.matrix);
    if (!is_integral(quotient)) throw NotASubpattern("M N^{-1} is not integral");
    LongMatrix p(m_basis.dim_pattern, n_basis.dim_pattern);
    for (int k = 0; k < n_basis.dim_pattern; ++k) {
        const PatternPoint yk =
            modulo_pattern(n_basis.pattern_vectors[static_cast<std::size_t>(k)], m_basis, Window::Unit);
        p.col(k) = point_to_index(yk, m_basis);
    }
    return p;
}

LongMatrix frequency_projection(const PatternBasis& n_basis, const PatternBasis& m_basis) {
    const RationalMatrix quotient = convert<Rational>(m_basis.matrix) * inverse_rational(n_basis.matrix);
    if (!is_integral(quotient)) throw NotASubpattern("M N^{-1} is not integral");
    LongMatrix p(m_basis.dim_pattern, n_basis.dim_pattern);
    for (int k = 0; k < n_basis.dim_pattern; ++k)
        p.col(k) = generator_to_index(n_basis.generator_long.col(k), m_basis);
    return p;
}

bool ScalingReport::verified() const {
    if (!dims_ok) return false;
    if (case_tag == 1) return complement_ok;
    return scaling_ok;
}

ScalingReport scaling_case(const IntMatrix& j, const IntMatrix& n) {
    const PatternBasis j_basis = build_basis(j);
    if (j_basis.dim_pattern != 1)
        throw Unsupported("scaling property needs exactly one nontrivial elementary divisor of J");
    const PatternBasis n_basis = build_basis(n);
    const PatternBasis m_basis = build_basis(IntMatrix(j * n));

    ScalingReport report;
    report.dim_m = m_basis.dim_pattern;
    report.dim_n = n_basis.dim_pattern;
    report.scale = j_basis.cycle_lengths.back();
    const std::int64_t eps = report.scale;

    RationalVector w = inverse_rational(n) * j_basis.pattern_vectors.front();
    report.mu = point_to_index(modulo_pattern(w * Rational(eps), n_basis, Window::Unit), n_basis);

    // Solve eps nu = mu componentwise modulo the cycle lengths of N.
    MultiIndex nu(n_basis.dim_pattern);
    bool split = true;
    for (int k = 0; k < n_basis.dim_pattern && split; ++k) {
        const std::int64_t len = n_basis.cycle_lengths[static_cast<std::size_t>(k)];
        const std::int64_t g = std::gcd(eps, len);
        if (report.mu(k) % g != 0) {
            split = false;
            break;
        }
        const std::int64_t mod = len / g;
        std::int64_t inv = 0;
        for (std::int64_t c = 0; c < mod; ++c) {
            if (((eps / g) % mod) * c % mod == 1 % mod) {
                inv = c;
                break;
            }
        }
        nu(k) = mod_pos((report.mu(k) / g) % mod * inv, mod);
    }
    report.case_tag = split ? 1 : 2;

    if (split) {
        for (int k = 0; k < n_basis.dim_pattern; ++k)
            w -= n_basis.pattern_vectors[static_cast<std::size_t>(k)] * Rational(static_cast<long>(nu(k)));
    }
    report.lambda = point_to_index(modulo_pattern(w, m_basis, Window::Unit), m_basis);

    if (report.case_tag == 1) {
        report.dims_ok = report.dim_m == report.dim_n + 1;
        const RationalMatrix nq = convert<Rational>(n);
        report.complement_ok = is_integral(RationalMatrix(w * Rational(static_cast<long>(eps))));
        for (std::int64_t c = 1; c < eps && report.complement_ok; ++c)
            report.complement_ok = !is_integral(RationalMatrix(nq * w * Rational(static_cast<long>(c))));
        // Search the coset w + P(N), i.e. all lifts of z_1, for a multiple
        // lambda x_l of one M-basis vector with eps_l^M = eps.
        const IntMatrix& nm = n;
        for (int l = 0; l < report.dim_m && !report.axis; ++l) {
            if (m_basis.cycle_lengths[static_cast<std::size_t>(l)] != eps) continue;
            for (std::int64_t c = 1; c < eps; ++c) {
                const RationalVector diff =
                    m_basis.pattern_vectors[static_cast<std::size_t>(l)] * Rational(static_cast<long>(c)) - w;
                if (is_integral(RationalMatrix(convert<Rational>(nm) * diff))) {
                    report.axis = l;
                    report.lambda = MultiIndex::Zero(report.dim_m);
                    report.lambda(l) = c;
                    break;
                }
            }
        }
        report.cycle_ok = report.axis.has_value();
    } else {
        report.dims_ok = report.dim_m == report.dim_n;
        report.projection = projection_matrix(n_basis, m_basis);
        const MultiIndex lhs = reduce_index(report.lambda * eps, m_basis.cycle_lengths);
        const MultiIndex rhs = reduce_index(report.projection * report.mu, m_basis.cycle_lengths);
        report.scaling_ok = lhs == rhs;
    }
    return report;
}

} // namespace latfft
