// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/fft1d.hpp"
#include "latfft/lattice.hpp"

#include <memory>

namespace latfft {

/// Largest pattern size for which the dense Fourier matrix is formed.
inline constexpr std::int64_t kDefaultDenseLimit = 4096;

enum class Domain {
    Spatial,   ///< indexed by P(M) in lambda order
    Frequency  ///< indexed by G(M^T) in mu order
};

/// Complex samples on a pattern or its generating group, addressed by the
/// row-major flattening of the multi-index box of `basis`.
struct LatticeArray {
    std::shared_ptr<const PatternBasis> basis;
    Domain domain = Domain::Spatial;
    Eigen::VectorXcd values;

    static LatticeArray zeros(std::shared_ptr<const PatternBasis> basis, Domain domain);
    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
};

/// True when both bases describe the same matrix.
bool same_basis(const PatternBasis& a, const PatternBasis& b);

/// Fast unitary Fourier transform on P(M).
///
/// The index box (eps_1, ..., eps_k) is transformed by splitting off the
/// last axis: first every contiguous block of length eps_k gets a 1D FFT,
/// then each of the eps_k interleaved slices is transformed recursively over
/// the leading axes. Both stages consist of independent sub-transforms over
/// disjoint data and are distributed over `threads` workers; the result
/// does not depend on the worker count.
class FourierPlan {
public:
    explicit FourierPlan(std::shared_ptr<const PatternBasis> basis, unsigned threads = 0);

    const PatternBasis& basis() const { return *basis_; }
    const std::shared_ptr<const PatternBasis>& basis_ptr() const { return basis_; }
    const std::vector<std::int64_t>& sizes() const { return basis_->cycle_lengths; }
    unsigned threads() const { return threads_; }

    /// In-place unitary forward transform of lambda-ordered values.
    void forward(std::span<Complex> data) const;
    /// In-place unitary inverse (conjugate, forward, conjugate).
    void inverse(std::span<Complex> data) const;

private:
    void transform(Complex* data, std::size_t axes, bool parallel) const;

    std::shared_ptr<const PatternBasis> basis_;
    std::vector<std::shared_ptr<const Fft1d>> axis_plans_;
    unsigned threads_;
};

LatticeArray fft_pattern(const LatticeArray& a, const FourierPlan& plan);
LatticeArray ifft_pattern(const LatticeArray& ahat, const FourierPlan& plan);

/// Dense unitary Fourier matrix, rows in mu order of G(M^T) and columns in
/// lambda order of P(M). Throws TooLarge above `dense_limit`.
Eigen::MatrixXcd fourier_matrix(const PatternBasis& basis, std::int64_t dense_limit = kDefaultDenseLimit);

/// Unitary Kronecker product F_{s_1} (x) ... (x) F_{s_k}; [1] for no factors.
Eigen::MatrixXcd kronecker_fourier(const std::vector<std::int64_t>& sizes);

/// Whether the dense Fourier matrix equals the Kronecker product of cyclic
/// DFTs entrywise to `tolerance`.
bool assert_kronecker_structure(const PatternBasis& basis, std::int64_t dense_limit = kDefaultDenseLimit,
                                double tolerance = 1e-12);

/// Dense reference transform. Throws TooLarge above `dense_limit`.
LatticeArray dft_naive(const LatticeArray& a, std::int64_t dense_limit = kDefaultDenseLimit);

/// Unitary 1D DFT convenience for Eigen vectors.
Eigen::VectorXcd fft_1d(const Eigen::VectorXcd& v);

} // namespace latfft
