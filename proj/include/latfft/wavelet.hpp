// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/fft.hpp"

#include <memory>
#include <vector>

namespace latfft {

/// Frequency-domain filters for one decomposition level M = J N.
///
/// Branch j acts as the Fourier multiplier bhat[j] on G(M^T). For every
/// h in G(N^T) (addressed by mu) the |det J| frequencies of G(M^T) above h
/// are h + N^T l, l in G(J^T); `coset_table` lists their flat M-indices.
struct FilterBank {
    std::shared_ptr<const PatternBasis> m_basis;
    std::shared_ptr<const PatternBasis> n_basis;
    std::shared_ptr<const PatternBasis> j_basis;
    std::vector<LatticeArray> bhat;
    std::vector<MultiIndex> offsets;          ///< lambda_l of N^T l in the M index box
    std::vector<std::int64_t> coset_table;    ///< row-major n x |det J|

    std::int64_t branch_count() const { return j_basis->size(); }
    std::int64_t coset_index(std::int64_t mu_flat, std::int64_t l) const {
        return coset_table[static_cast<std::size_t>(mu_flat * branch_count() + l)];
    }
};

/// Branch data over P(N) (spatial) or G(N^T) (frequency).
struct WaveletCoefficients {
    std::vector<LatticeArray> branches;
};

/// M-coordinates of N^T l for l in G(J^T), in the lambda order of G(J^T).
/// Throws BadFactorization unless J N = M.
std::vector<MultiIndex> coset_offsets(const PatternBasis& j_basis, const PatternBasis& n_basis,
                                      const PatternBasis& m_basis);

/// Assembles a filter bank and its coset table. Throws BadFactorization
/// unless J N = M, ShapeMismatch when the filter count or sizes are wrong.
FilterBank make_filter_bank(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis,
                            std::shared_ptr<const PatternBasis> j_basis, std::vector<LatticeArray> bhat);

/// Maximum deviation of the per-coset analysis matrices from unitarity.
double isometry_defect(const FilterBank& fb);

/// dhat_j[mu] = |det J|^{-1/2} sum_l conj(bhat_j[k_l]) ahat[k_l], k_l = coset_index(mu, l).
WaveletCoefficients decompose_step(const LatticeArray& ahat, const FilterBank& fb, unsigned threads = 1);

/// Adjoint of decompose_step.
LatticeArray reconstruct_step(const WaveletCoefficients& dhat, const FilterBank& fb, unsigned threads = 1);

/// FFT on P(M), one decomposition step, inverse FFT of every branch on P(N).
WaveletCoefficients full_analysis(const LatticeArray& a, const FilterBank& fb, unsigned threads = 1);

/// Inverse of full_analysis for isometric filter banks.
LatticeArray synthesis(const WaveletCoefficients& d, const FilterBank& fb, unsigned threads = 1);

/// Result of a chain of decomposition steps on the first branch.
struct MultilevelDecomposition {
    /// details[k] holds branches 2..|det J_k| of level k, spatial over P(N_k).
    std::vector<std::vector<LatticeArray>> details;
    /// First branch of the last level, spatial.
    LatticeArray approximation;
};

/// One FFT at the start, decompose_step per level on the first branch in
/// the frequency domain, one inverse FFT per emitted branch. Stage k + 1
/// must decompose the N of stage k (BadFactorization otherwise).
MultilevelDecomposition multilevel(const LatticeArray& a, const std::vector<FilterBank>& chain, unsigned threads = 1);

/// Inverse of multilevel.
LatticeArray multilevel_reconstruct(const MultilevelDecomposition& dec, const std::vector<FilterBank>& chain,
                                    unsigned threads = 1);

} // namespace latfft
