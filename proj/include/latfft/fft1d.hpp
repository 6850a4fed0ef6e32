// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace latfft {

using Complex = std::complex<double>;

/// Plan for an unnormalized forward DFT of fixed length n,
///   X_k = sum_j x_j exp(-2 pi i j k / n).
///
/// Smooth lengths run a recursive mixed-radix Cooley-Tukey (radix 4, 2, 3
/// and a generic odd-prime butterfly). Lengths with a prime factor above
/// kMaxDirectRadix go through Bluestein's chirp-z convolution on a padded
/// power-of-two length. Plans are immutable and safe to share between
/// threads; every call takes caller-owned scratch.
class Fft1d {
public:
    static constexpr std::size_t kMaxDirectRadix = 37;

    explicit Fft1d(std::size_t n);

    std::size_t size() const { return n_; }
    /// Scratch length `forward` needs for this plan.
    std::size_t scratch_size() const;
    bool uses_bluestein() const { return bluestein_ != nullptr; }

    /// In-place forward transform. `scratch` must hold scratch_size() values.
    void forward(std::span<Complex> data, std::span<Complex> scratch) const;
    /// In-place unnormalized backward transform (conjugated kernel).
    void backward(std::span<Complex> data, std::span<Complex> scratch) const;

    /// Convenience overload that allocates its own scratch.
    void forward(std::span<Complex> data) const;

private:
    struct Bluestein;

    void work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors) const;
    void butterfly2(Complex* out, std::size_t fstride, std::size_t m) const;
    void butterfly3(Complex* out, std::size_t fstride, std::size_t m) const;
    void butterfly4(Complex* out, std::size_t fstride, std::size_t m) const;
    void butterfly_generic(Complex* out, std::size_t fstride, std::size_t m, std::size_t p) const;

    std::size_t n_;
    std::vector<std::size_t> factors_;  // pairs (radix, remaining length)
    std::vector<Complex> twiddles_;
    std::shared_ptr<const Bluestein> bluestein_;
};

/// Shared plan cache keyed by length.
std::shared_ptr<const Fft1d> fft1d_plan(std::size_t n);

/// Unitary 1D DFT (scaled by n^{-1/2}) of any length n >= 1.
std::vector<Complex> fft_1d(std::span<const Complex> v);

/// Dense O(n^2) unitary DFT; reference for tests and small inputs.
std::vector<Complex> dft_1d_direct(std::span<const Complex> v);

} // namespace latfft
