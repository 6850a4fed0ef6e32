// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/fft1d.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace latfft {

namespace {

Complex unit_root(std::size_t k, std::size_t n) {
    // exp(-2 pi i k / n) with k reduced first so the angle stays small.
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<std::size_t> factorize(std::size_t n) {
    std::vector<std::size_t> radices;
    std::size_t rest = n;
    while (rest % 4 == 0) {
        radices.push_back(4);
        rest /= 4;
    }
    while (rest % 2 == 0) {
        radices.push_back(2);
        rest /= 2;
    }
    for (std::size_t p = 3; p * p <= rest; p += 2) {
        while (rest % p == 0) {
            radices.push_back(p);
            rest /= p;
        }
    }
    if (rest > 1) radices.push_back(rest);
    return radices;
}

} // namespace

struct Fft1d::Bluestein {
    std::size_t padded;
    std::shared_ptr<const Fft1d> inner;
    std::vector<Complex> chirp;        // exp(-pi i k^2 / n), k < n
    std::vector<Complex> kernel_hat;   // DFT of the conjugate chirp, padded
};

Fft1d::Fft1d(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("FFT length must be positive");
    const auto radices = factorize(n);
    if (!radices.empty() && radices.back() > kMaxDirectRadix) {
        auto b = std::make_shared<Bluestein>();
        b->padded = 1;
        while (b->padded < 2 * n - 1) b->padded <<= 1;
        b->inner = fft1d_plan(b->padded);
        b->chirp.resize(n);
        const std::size_t two_n = 2 * n;
        for (std::size_t k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the chirp phase exact for large k.
            const std::size_t k2 = static_cast<std::size_t>((static_cast<unsigned __int128>(k) * k) % two_n);
            const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
            b->chirp[k] = {std::cos(angle), std::sin(angle)};
        }
        b->kernel_hat.assign(b->padded, Complex(0.0, 0.0));
        b->kernel_hat[0] = std::conj(b->chirp[0]);
        for (std::size_t k = 1; k < n; ++k) {
            b->kernel_hat[k] = std::conj(b->chirp[k]);
            b->kernel_hat[b->padded - k] = std::conj(b->chirp[k]);
        }
        std::vector<Complex> scratch(b->inner->scratch_size());
        b->inner->forward(b->kernel_hat, scratch);
        bluestein_ = std::move(b);
        return;
    }

    std::size_t remaining = n;
    for (std::size_t p : radices) {
        remaining /= p;
        factors_.push_back(p);
        factors_.push_back(remaining);
    }
    twiddles_.resize(n);
    for (std::size_t k = 0; k < n; ++k) twiddles_[k] = unit_root(k, n);
}

std::size_t Fft1d::scratch_size() const {
    if (bluestein_) return 2 * bluestein_->padded;
    return n_;
}

void Fft1d::forward(std::span<Complex> data) const {
    std::vector<Complex> scratch(scratch_size());
    forward(data, scratch);
}

void Fft1d::backward(std::span<Complex> data, std::span<Complex> scratch) const {
    for (auto& v : data) v = std::conj(v);
    forward(data, scratch);
    for (auto& v : data) v = std::conj(v);
}

void Fft1d::forward(std::span<Complex> data, std::span<Complex> scratch) const {
    if (data.size() != n_) throw std::invalid_argument("FFT input length does not match the plan");
    if (scratch.size() < scratch_size()) throw std::invalid_argument("FFT scratch too small");
    if (n_ == 1) return;

    if (bluestein_) {
        const auto& b = *bluestein_;
        std::span<Complex> work_buf = scratch.first(b.padded);
        std::span<Complex> inner_scratch = scratch.subspan(b.padded, b.padded);
        for (std::size_t k = 0; k < n_; ++k) work_buf[k] = data[k] * b.chirp[k];
        for (std::size_t k = n_; k < b.padded; ++k) work_buf[k] = Complex(0.0, 0.0);
        b.inner->forward(work_buf, inner_scratch);
        for (std::size_t k = 0; k < b.padded; ++k) work_buf[k] = std::conj(work_buf[k] * b.kernel_hat[k]);
        b.inner->forward(work_buf, inner_scratch);
        const double scale = 1.0 / static_cast<double>(b.padded);
        for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(work_buf[k]) * scale * b.chirp[k];
        return;
    }

    std::copy(data.begin(), data.end(), scratch.begin());
    work(data.data(), scratch.data(), 1, factors_.data());
}

void Fft1d::work(Complex* out, const Complex* in, std::size_t fstride, const std::size_t* factors) const {
    const std::size_t p = factors[0];
    const std::size_t m = factors[1];
    if (m == 1) {
        for (std::size_t i = 0; i < p; ++i) out[i] = in[i * fstride];
    } else {
        for (std::size_t i = 0; i < p; ++i) work(out + i * m, in + i * fstride, fstride * p, factors + 2);
    }
    switch (p) {
        case 2: butterfly2(out, fstride, m); break;
        case 3: butterfly3(out, fstride, m); break;
        case 4: butterfly4(out, fstride, m); break;
        default: butterfly_generic(out, fstride, m, p); break;
    }
}

void Fft1d::butterfly2(Complex* out, std::size_t fstride, std::size_t m) const {
    Complex* out2 = out + m;
    for (std::size_t k = 0; k < m; ++k) {
        const Complex t = out2[k] * twiddles_[k * fstride];
        out2[k] = out[k] - t;
        out[k] += t;
    }
}

void Fft1d::butterfly3(Complex* out, std::size_t fstride, std::size_t m) const {
    const double sin3 = twiddles_[fstride * m].imag();
    for (std::size_t k = 0; k < m; ++k) {
        const Complex s1 = out[k + m] * twiddles_[k * fstride];
        const Complex s2 = out[k + 2 * m] * twiddles_[2 * k * fstride];
        const Complex s3 = s1 + s2;
        Complex s0 = s1 - s2;
        Complex a = out[k] - 0.5 * s3;
        s0 *= sin3;
        out[k] += s3;
        out[k + 2 * m] = Complex(a.real() + s0.imag(), a.imag() - s0.real());
        out[k + m] = Complex(a.real() - s0.imag(), a.imag() + s0.real());
    }
}

void Fft1d::butterfly4(Complex* out, std::size_t fstride, std::size_t m) const {
    for (std::size_t k = 0; k < m; ++k) {
        const Complex s0 = out[k + m] * twiddles_[k * fstride];
        const Complex s1 = out[k + 2 * m] * twiddles_[2 * k * fstride];
        const Complex s2 = out[k + 3 * m] * twiddles_[3 * k * fstride];
        const Complex s5 = out[k] - s1;
        out[k] += s1;
        const Complex s3 = s0 + s2;
        const Complex s4 = s0 - s2;
        out[k + 2 * m] = out[k] - s3;
        out[k] += s3;
        out[k + m] = Complex(s5.real() + s4.imag(), s5.imag() - s4.real());
        out[k + 3 * m] = Complex(s5.real() - s4.imag(), s5.imag() + s4.real());
    }
}

void Fft1d::butterfly_generic(Complex* out, std::size_t fstride, std::size_t m, std::size_t p) const {
    std::array<Complex, kMaxDirectRadix + 1> scratch{};
    for (std::size_t u = 0; u < m; ++u) {
        for (std::size_t q1 = 0, k = u; q1 < p; ++q1, k += m) scratch[q1] = out[k];
        for (std::size_t q1 = 0, k = u; q1 < p; ++q1, k += m) {
            std::size_t twidx = 0;
            Complex acc = scratch[0];
            for (std::size_t q = 1; q < p; ++q) {
                twidx += fstride * k;
                if (twidx >= n_) twidx %= n_;
                acc += scratch[q] * twiddles_[twidx];
            }
            out[k] = acc;
        }
    }
}

std::shared_ptr<const Fft1d> fft1d_plan(std::size_t n) {
    static std::mutex mutex;
    static std::map<std::size_t, std::shared_ptr<const Fft1d>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    // Built outside the lock: Bluestein plans request their inner plan recursively.
    auto plan = std::make_shared<const Fft1d>(n);
    std::lock_guard lock(mutex);
    return cache.emplace(n, std::move(plan)).first->second;
}

std::vector<Complex> fft_1d(std::span<const Complex> v) {
    if (v.empty()) throw std::invalid_argument("FFT length must be positive");
    std::vector<Complex> out(v.begin(), v.end());
    fft1d_plan(out.size())->forward(out);
    const double scale = 1.0 / std::sqrt(static_cast<double>(out.size()));
    for (auto& x : out) x *= scale;
    return out;
}

std::vector<Complex> dft_1d_direct(std::span<const Complex> v) {
    const std::size_t n = v.size();
    std::vector<Complex> out(n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) acc += v[j] * unit_root(static_cast<std::size_t>((static_cast<unsigned __int128>(j) * k) % n), n);
        out[k] = acc * scale;
    }
    return out;
}

} // namespace latfft
