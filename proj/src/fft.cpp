// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/fft.hpp"

#include "latfft/parallel.hpp"

#include <cmath>
#include <numbers>

namespace latfft {

LatticeArray LatticeArray::zeros(std::shared_ptr<const PatternBasis> basis, Domain domain) {
    LatticeArray out;
    out.values = Eigen::VectorXcd::Zero(basis->size());
    out.basis = std::move(basis);
    out.domain = domain;
    return out;
}

bool same_basis(const PatternBasis& a, const PatternBasis& b) {
    return &a == &b || (a.matrix.rows() == b.matrix.rows() && a.matrix == b.matrix);
}

FourierPlan::FourierPlan(std::shared_ptr<const PatternBasis> basis, unsigned threads)
    : basis_(std::move(basis)), threads_(threads == 0 ? default_thread_count() : threads) {
    for (auto size : basis_->cycle_lengths) axis_plans_.push_back(fft1d_plan(static_cast<std::size_t>(size)));
}

void FourierPlan::transform(Complex* data, std::size_t axes, bool parallel) const {
    if (axes == 0) return;
    const auto& shape = basis_->cycle_lengths;
    const auto last = static_cast<std::size_t>(shape[axes - 1]);
    std::size_t blocks = 1;
    for (std::size_t a = 0; a + 1 < axes; ++a) blocks *= static_cast<std::size_t>(shape[a]);
    const Fft1d& last_plan = *axis_plans_[axes - 1];
    const unsigned workers = parallel ? threads_ : 1;

    // Contiguous blocks along the last axis.
    parallel_for(blocks, workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<Complex> scratch(last_plan.scratch_size());
        for (std::size_t b = begin; b < end; ++b)
            last_plan.forward(std::span<Complex>(data + b * last, last), scratch);
    });
    if (axes == 1) return;

    // Interleaved slices: fixed last index, recursive transform of the rest.
    parallel_for(last, workers, [&](std::size_t begin, std::size_t end, unsigned) {
        std::vector<Complex> slice(blocks);
        for (std::size_t xi = begin; xi < end; ++xi) {
            for (std::size_t t = 0; t < blocks; ++t) slice[t] = data[t * last + xi];
            transform(slice.data(), axes - 1, false);
            for (std::size_t t = 0; t < blocks; ++t) data[t * last + xi] = slice[t];
        }
    });
}

void FourierPlan::forward(std::span<Complex> data) const {
    if (static_cast<std::int64_t>(data.size()) != basis_->size())
        throw ShapeMismatch("array length does not match the plan");
    transform(data.data(), axis_plans_.size(), true);
    const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (auto& v : data) v *= scale;
}

void FourierPlan::inverse(std::span<Complex> data) const {
    for (auto& v : data) v = std::conj(v);
    forward(data);
    for (auto& v : data) v = std::conj(v);
}

namespace {

void check_plan(const LatticeArray& a, const FourierPlan& plan, Domain expected) {
    if (!a.basis || !same_basis(*a.basis, plan.basis()))
        throw ShapeMismatch("array and plan belong to different matrices");
    if (a.size() != plan.basis().size()) throw ShapeMismatch("array length does not match the pattern size");
    if (a.domain != expected) throw ShapeMismatch("array is in the wrong domain");
}

} // namespace

LatticeArray fft_pattern(const LatticeArray& a, const FourierPlan& plan) {
    check_plan(a, plan, Domain::Spatial);
    LatticeArray out{plan.basis_ptr(), Domain::Frequency, a.values};
    plan.forward(std::span<Complex>(out.values.data(), static_cast<std::size_t>(out.values.size())));
    return out;
}

LatticeArray ifft_pattern(const LatticeArray& ahat, const FourierPlan& plan) {
    check_plan(ahat, plan, Domain::Frequency);
    LatticeArray out{plan.basis_ptr(), Domain::Spatial, ahat.values};
    plan.inverse(std::span<Complex>(out.values.data(), static_cast<std::size_t>(out.values.size())));
    return out;
}

Eigen::MatrixXcd fourier_matrix(const PatternBasis& basis, std::int64_t dense_limit) {
    const std::int64_t m = basis.size();
    if (m > dense_limit) throw TooLarge("pattern size " + std::to_string(m) + " exceeds the dense limit");
    const LongMatrix points = enumerate_pattern_scaled(basis, Window::Unit);
    const LongMatrix freqs = enumerate_generators(basis);
    Eigen::MatrixXcd f(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (std::int64_t row = 0; row < m; ++row) {
        for (std::int64_t col = 0; col < m; ++col) {
            // h^T y = (h^T p) / m, reduced exactly before the exponential.
            std::int64_t phase = freqs.col(row).dot(points.col(col)) % m;
            if (phase < 0) phase += m;
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(phase) / static_cast<double>(m);
            f(row, col) = std::polar(scale, angle);
        }
    }
    return f;
}

Eigen::MatrixXcd kronecker_fourier(const std::vector<std::int64_t>& sizes) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Ones(1, 1);
    for (auto size : sizes) {
        Eigen::MatrixXcd factor(size, size);
        const double scale = 1.0 / std::sqrt(static_cast<double>(size));
        for (std::int64_t h = 0; h < size; ++h)
            for (std::int64_t g = 0; g < size; ++g)
                factor(h, g) = std::polar(scale, -2.0 * std::numbers::pi * static_cast<double>((h * g) % size) /
                                                     static_cast<double>(size));
        Eigen::MatrixXcd next(out.rows() * size, out.cols() * size);
        for (Eigen::Index i = 0; i < out.rows(); ++i)
            for (Eigen::Index j = 0; j < out.cols(); ++j)
                next.block(i * size, j * size, size, size) = out(i, j) * factor;
        out = std::move(next);
    }
    return out;
}

bool assert_kronecker_structure(const PatternBasis& basis, std::int64_t dense_limit, double tolerance) {
    const Eigen::MatrixXcd f = fourier_matrix(basis, dense_limit);
    const Eigen::MatrixXcd k = kronecker_fourier(basis.cycle_lengths);
    return (f - k).cwiseAbs().maxCoeff() <= tolerance;
}

LatticeArray dft_naive(const LatticeArray& a, std::int64_t dense_limit) {
    if (a.domain != Domain::Spatial) throw ShapeMismatch("dft_naive expects spatial data");
    if (a.size() != a.basis->size()) throw ShapeMismatch("array length does not match the pattern size");
    return LatticeArray{a.basis, Domain::Frequency, fourier_matrix(*a.basis, dense_limit) * a.values};
}

Eigen::VectorXcd fft_1d(const Eigen::VectorXcd& v) {
    const auto out = fft_1d(std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())));
    return Eigen::Map<const Eigen::VectorXcd>(out.data(), static_cast<Eigen::Index>(out.size()));
}

} // namespace latfft
