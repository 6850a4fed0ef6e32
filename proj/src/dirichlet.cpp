// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/dirichlet.hpp"

#include <cmath>
#include <numbers>

namespace latfft {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// m M^{-T} k (integral).
LongVector scaled_dual(const LongVector& k, const PatternBasis& basis) {
    return basis.scaled_inverse.transpose() * k;
}

bool in_closed_cube(const LongVector& k, const PatternBasis& basis) {
    const LongVector q = scaled_dual(k, basis);
    for (Eigen::Index i = 0; i < q.size(); ++i)
        if (2 * std::abs(q(i)) > basis.det_abs) return false;
    return true;
}

std::int64_t flat_generator_index(const LongVector& k, const PatternBasis& basis) {
    return flatten(generator_to_index(k, basis), basis.cycle_lengths);
}

/// Checks M = J N, |det J| = 2 and J^{-T} [-1/2,1/2]^d inside [-1/2,1/2]^d.
void check_dyadic_split(const PatternBasis& m_basis, const PatternBasis& n_basis) {
    if (m_basis.dim() != n_basis.dim()) throw BadFactorization("dimension mismatch");
    const RationalMatrix j = m_basis.matrix.cast<Rational>() * inverse_rational(n_basis.matrix);
    if (!is_integral(j)) throw BadFactorization("M N^{-1} is not integral");
    const IntMatrix ji = to_integer(j);
    if (abs(BigInt(determinant(ji))) != 2) throw BadFactorization("|det J| must be 2");
    // Corners of the cube are the extreme points, so checking them suffices.
    const RationalMatrix jit = inverse_rational(ji).transpose();
    const Eigen::Index d = m_basis.dim();
    for (std::int64_t mask = 0; mask < (std::int64_t{1} << d); ++mask) {
        RationalVector corner(d);
        for (Eigen::Index i = 0; i < d; ++i) corner(i) = Rational((mask >> i) & 1 ? 1 : -1, 2);
        const RationalVector image = jit * corner;
        for (Eigen::Index i = 0; i < d; ++i)
            if (abs(image(i)) > Rational(1, 2)) throw BadFactorization("J^{-T} does not map the cube into itself");
    }
}

} // namespace

int boundary_count(const LongVector& k, const PatternBasis& basis) {
    const LongVector q = scaled_dual(reduce_generator(k, basis), basis);
    int r = 0;
    for (Eigen::Index i = 0; i < q.size(); ++i) r += 2 * std::abs(q(i)) == basis.det_abs ? 1 : 0;
    return r;
}

Complex KernelSpectrum::coefficient(const LongVector& k) const {
    if (lookup_.empty())
        for (Eigen::Index t = 0; t < support.cols(); ++t)
            lookup_.emplace(std::vector<std::int64_t>(support.col(t).data(), support.col(t).data() + support.rows()), t);
    const auto it = lookup_.find(std::vector<std::int64_t>(k.data(), k.data() + k.size()));
    return it == lookup_.end() ? Complex(0.0, 0.0) : coeffs(it->second);
}

Complex KernelSpectrum::evaluate(const Eigen::VectorXd& x) const {
    Complex acc(0.0, 0.0);
    for (Eigen::Index t = 0; t < support.cols(); ++t)
        acc += coeffs(t) * std::polar(1.0, support.col(t).cast<double>().dot(x));
    return acc;
}

double KernelSpectrum::norm_squared() const { return coeffs.squaredNorm(); }

KernelSpectrum dirichlet_spectrum(std::shared_ptr<const PatternBasis> m_basis) {
    const PatternBasis& b = *m_basis;
    const Eigen::Index d = b.dim();
    const LongMatrix reps = enumerate_generators(b);
    std::vector<LongVector> points;
    std::vector<double> values;
    for (Eigen::Index t = 0; t < reps.cols(); ++t) {
        const LongVector h = reps.col(t);
        const LongVector q = scaled_dual(h, b);
        std::vector<Eigen::Index> boundary;
        for (Eigen::Index i = 0; i < d; ++i)
            if (2 * q(i) == -b.det_abs) boundary.push_back(i);
        const double c = 1.0 / std::sqrt(static_cast<double>(b.det_abs)) /
                         std::sqrt(static_cast<double>(std::int64_t{1} << boundary.size()));
        for (std::int64_t mask = 0; mask < (std::int64_t{1} << boundary.size()); ++mask) {
            LongVector k = h;
            for (std::size_t s = 0; s < boundary.size(); ++s)
                if ((mask >> s) & 1) k += b.matrix_long.row(boundary[s]).transpose();
            points.push_back(k);
            values.push_back(c);
        }
    }
    KernelSpectrum out;
    out.basis = std::move(m_basis);
    out.support.resize(d, static_cast<Eigen::Index>(points.size()));
    out.coeffs.resize(static_cast<Eigen::Index>(points.size()));
    for (std::size_t t = 0; t < points.size(); ++t) {
        out.support.col(static_cast<Eigen::Index>(t)) = points[t];
        out.coeffs(static_cast<Eigen::Index>(t)) = values[t];
    }
    return out;
}

LatticeArray scaling_filter(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis) {
    check_dyadic_split(*m_basis, *n_basis);
    const KernelSpectrum phi = dirichlet_spectrum(m_basis);
    LatticeArray out = LatticeArray::zeros(m_basis, Domain::Frequency);
    for (Eigen::Index t = 0; t < phi.size(); ++t) {
        const LongVector k = phi.support.col(t);
        if (!in_closed_cube(k, *n_basis)) continue;
        const int exponent = 1 + boundary_count(k, *m_basis) - boundary_count(k, *n_basis);
        out.values(flat_generator_index(k, *m_basis)) = std::sqrt(std::ldexp(1.0, exponent));
    }
    return out;
}

LatticeArray wavelet_filter(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis,
                            std::shared_ptr<const PatternBasis> j_basis) {
    if (IntMatrix(j_basis->matrix * n_basis->matrix) != m_basis->matrix) throw BadFactorization("J N does not equal M");
    const LatticeArray a = scaling_filter(m_basis, n_basis);
    const PatternBasis& m = *m_basis;
    const PatternBasis& n = *n_basis;
    const PatternBasis& j = *j_basis;

    // The nonzero elements of P(J) and G(J^T), as numerators y_s = |det J| y.
    const LongMatrix ys = enumerate_pattern_scaled(j, Window::Unit);
    const LongMatrix gs = enumerate_generators(j);
    const LongVector y_scaled = ys.col(1);
    const LongVector shift = n.matrix_long.transpose() * gs.col(1);

    // h^T N^{-1} y = h^T (n N^{-1}) y_s / (n |det J|), reduced exactly.
    const std::int64_t denominator = n.det_abs * j.det_abs;
    const LongVector weights = n.scaled_inverse * y_scaled;
    const LongMatrix reps = enumerate_generators(m);
    LatticeArray out = LatticeArray::zeros(m_basis, Domain::Frequency);
    for (Eigen::Index t = 0; t < reps.cols(); ++t) {
        const LongVector h = reps.col(t);
        const Complex value = a.values(flat_generator_index(h + shift, m));
        if (value == Complex(0.0, 0.0)) continue;
        const std::int64_t numerator = floor_mod(h.dot(weights), denominator);
        out.values(t) = value * std::polar(1.0, -kTwoPi * static_cast<double>(numerator) / static_cast<double>(denominator));
    }
    return out;
}

KernelSpectrum wavelet_spectrum(std::shared_ptr<const PatternBasis> m_basis,
                                std::shared_ptr<const PatternBasis> n_basis,
                                std::shared_ptr<const PatternBasis> j_basis) {
    const LatticeArray filter = wavelet_filter(m_basis, n_basis, j_basis);
    KernelSpectrum psi = dirichlet_spectrum(m_basis);
    for (Eigen::Index t = 0; t < psi.size(); ++t)
        psi.coeffs(t) *= filter.values(flat_generator_index(psi.support.col(t), *m_basis));
    return psi;
}

FilterBank filter_bank_from_dirichlet(std::shared_ptr<const PatternBasis> m_basis,
                                      std::shared_ptr<const PatternBasis> n_basis,
                                      std::shared_ptr<const PatternBasis> j_basis) {
    if (IntMatrix(j_basis->matrix * n_basis->matrix) != m_basis->matrix) throw BadFactorization("J N does not equal M");
    std::vector<LatticeArray> bhat;
    bhat.push_back(scaling_filter(m_basis, n_basis));
    bhat.push_back(wavelet_filter(m_basis, n_basis, j_basis));
    return make_filter_bank(std::move(m_basis), std::move(n_basis), std::move(j_basis), std::move(bhat));
}

LatticeArray coset_sums(const KernelSpectrum& spectrum) {
    LatticeArray out = LatticeArray::zeros(spectrum.basis, Domain::Frequency);
    for (Eigen::Index t = 0; t < spectrum.size(); ++t)
        out.values(flat_generator_index(spectrum.support.col(t), *spectrum.basis)) += spectrum.coeffs(t);
    return out;
}

// With Phi_h the coset sums, samples of phi on the pattern have transform
// sqrt(m) Phi_h, and the group convolution theorem gives
// fft(s) = sqrt(m) fft(a) fft(samples of phi) = m Phi_h fft(a).
LatticeArray translate_coeffs_to_samples(const LatticeArray& a, const KernelSpectrum& spectrum, unsigned threads) {
    const FourierPlan plan(spectrum.basis, threads);
    LatticeArray ahat = fft_pattern(a, plan);
    const LatticeArray phi = coset_sums(spectrum);
    ahat.values = ahat.values.cwiseProduct(phi.values) * static_cast<double>(spectrum.basis->det_abs);
    return ifft_pattern(ahat, plan);
}

LatticeArray samples_to_translate_coeffs(const LatticeArray& s, const KernelSpectrum& spectrum, unsigned threads) {
    const LatticeArray phi = coset_sums(spectrum);
    const double scale = phi.values.cwiseAbs().maxCoeff();
    for (Eigen::Index h = 0; h < phi.values.size(); ++h)
        if (!(std::abs(phi.values(h)) > 1e-14 * scale))
            throw NonInvertibleKernel("coset sum of the kernel vanishes at frequency index " + std::to_string(h));
    const FourierPlan plan(spectrum.basis, threads);
    LatticeArray shat = fft_pattern(s, plan);
    shat.values = shat.values.cwiseQuotient(phi.values) / static_cast<double>(spectrum.basis->det_abs);
    return ifft_pattern(shat, plan);
}

Eigen::MatrixXcd translate_gram(const KernelSpectrum& f, const KernelSpectrum& g, const PatternBasis& shifts) {
    const LongMatrix points = enumerate_pattern_scaled(shifts, Window::Unit);
    const std::int64_t n = shifts.det_abs;
    // The Gram matrix only depends on u - v; tabulate it per difference.
    std::vector<Complex> products;
    std::vector<LongVector> freqs;
    for (Eigen::Index t = 0; t < f.size(); ++t) {
        const Complex p = f.coeffs(t) * std::conj(g.coefficient(f.support.col(t)));
        if (p != Complex(0.0, 0.0)) {
            products.push_back(p);
            freqs.push_back(f.support.col(t));
        }
    }
    Eigen::VectorXcd by_difference = Eigen::VectorXcd::Zero(points.cols());
    const auto& shape = shifts.cycle_lengths;
    for (Eigen::Index z = 0; z < points.cols(); ++z) {
        Complex acc(0.0, 0.0);
        for (std::size_t t = 0; t < products.size(); ++t) {
            const std::int64_t phase = floor_mod(freqs[t].dot(points.col(z)), n);
            acc += products[t] * std::polar(1.0, -kTwoPi * static_cast<double>(phase) / static_cast<double>(n));
        }
        by_difference(z) = acc;
    }
    Eigen::MatrixXcd gram(points.cols(), points.cols());
    for (Eigen::Index u = 0; u < points.cols(); ++u)
        for (Eigen::Index v = 0; v < points.cols(); ++v) {
            const MultiIndex diff = reduce_index(unflatten(u, shape) - unflatten(v, shape), shape);
            gram(u, v) = by_difference(flatten(diff, shape));
        }
    return gram;
}

} // namespace latfft
