// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/wavelet.hpp"

#include <map>
#include <memory>
#include <vector>

namespace latfft {

/// Number of coordinates of M^{-T} h equal to +-1/2, where h is the
/// representative of k in the window M^T [-1/2,1/2)^d.
int boundary_count(const LongVector& k, const PatternBasis& basis);

/// Fourier coefficients of a 2 pi periodic function supported on finitely
/// many frequencies. f(x) = sum_k c_k exp(i k^T x).
struct KernelSpectrum {
    std::shared_ptr<const PatternBasis> basis;  ///< M whose translates are used
    LongMatrix support;                         ///< one frequency k per column
    Eigen::VectorXcd coeffs;                    ///< c_k in column order

    Eigen::Index size() const { return support.cols(); }
    /// c_k, zero outside the support.
    Complex coefficient(const LongVector& k) const;
    /// f(x) by direct summation.
    Complex evaluate(const Eigen::VectorXd& x) const;
    /// sum over the support of |c_k|^2.
    double norm_squared() const;

private:
    mutable std::map<std::vector<std::int64_t>, Eigen::Index> lookup_;
};

/// Dirichlet kernel phi_M: c_k = m^{-1/2} 2^{-r(k)/2} for M^{-T} k in the
/// closed cube [-1/2,1/2]^d. Support listed by window representative (lambda
/// order), then by the boundary shifts of that representative.
KernelSpectrum dirichlet_spectrum(std::shared_ptr<const PatternBasis> m_basis);

/// Scaling filter a on G(M^T) with c_k(phi_N) = a_[k] c_k(phi_M).
/// Throws BadFactorization unless M = J N with |det J| = 2 and the N cube
/// lies in the M cube.
LatticeArray scaling_filter(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis);

/// Frequency filter of psi_N on G(M^T):
/// a_[h + N^T g] exp(-2 pi i h^T N^{-1} y), y != 0 in P(J), g != 0 in G(J^T).
LatticeArray wavelet_filter(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis,
                            std::shared_ptr<const PatternBasis> j_basis);

/// Spectrum of psi_N: c_k(psi_N) = c_k(phi_M) times the wavelet filter at [k].
KernelSpectrum wavelet_spectrum(std::shared_ptr<const PatternBasis> m_basis,
                                std::shared_ptr<const PatternBasis> n_basis,
                                std::shared_ptr<const PatternBasis> j_basis);

/// Two-branch filter bank: branch 1 the scaling filter, branch 2 the wavelet filter.
FilterBank filter_bank_from_dirichlet(std::shared_ptr<const PatternBasis> m_basis,
                                      std::shared_ptr<const PatternBasis> n_basis,
                                      std::shared_ptr<const PatternBasis> j_basis);

/// Phi_h = sum_{k = h mod M^T} c_k, as a frequency array on G(M^T).
LatticeArray coset_sums(const KernelSpectrum& spectrum);

/// Samples f(2 pi y), y in P(M), of f = sum_y a_y T(y) phi.
LatticeArray translate_coeffs_to_samples(const LatticeArray& a, const KernelSpectrum& spectrum, unsigned threads = 1);

/// Coefficients a of the interpolant f = sum_y a_y T(y) phi with f(2 pi y) = s_y.
/// Throws NonInvertibleKernel when some coset sum of phi vanishes.
LatticeArray samples_to_translate_coeffs(const LatticeArray& s, const KernelSpectrum& spectrum, unsigned threads = 1);

/// Gram matrix <T(u) f, T(v) g> over u, v in P(N) for spectra f, g, with
/// T(u) f(x) = f(x - 2 pi u) and the normalized inner product on [0, 2 pi)^d.
Eigen::MatrixXcd translate_gram(const KernelSpectrum& f, const KernelSpectrum& g, const PatternBasis& shifts);

} // namespace latfft
