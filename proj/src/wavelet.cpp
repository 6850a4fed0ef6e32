// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/wavelet.hpp"

#include "latfft/parallel.hpp"

#include <cmath>

namespace latfft {

namespace {

void check_factorization(const PatternBasis& j_basis, const PatternBasis& n_basis, const PatternBasis& m_basis) {
    if (j_basis.dim() != m_basis.dim() || n_basis.dim() != m_basis.dim() ||
        IntMatrix(j_basis.matrix * n_basis.matrix) != m_basis.matrix)
        throw BadFactorization("J N does not equal M");
}

void check_bank_input(const LatticeArray& a, const PatternBasis& basis, Domain domain, const char* what) {
    if (!a.basis || !same_basis(*a.basis, basis) || a.size() != basis.size() || a.domain != domain)
        throw ShapeMismatch(what);
}

} // namespace

std::vector<MultiIndex> coset_offsets(const PatternBasis& j_basis, const PatternBasis& n_basis,
                                      const PatternBasis& m_basis) {
    check_factorization(j_basis, n_basis, m_basis);
    const LongMatrix ls = enumerate_generators(j_basis);
    const LongMatrix nt = n_basis.matrix_long.transpose();
    std::vector<MultiIndex> out;
    out.reserve(static_cast<std::size_t>(ls.cols()));
    for (Eigen::Index t = 0; t < ls.cols(); ++t) out.push_back(generator_to_index(nt * ls.col(t), m_basis));
    return out;
}

FilterBank make_filter_bank(std::shared_ptr<const PatternBasis> m_basis, std::shared_ptr<const PatternBasis> n_basis,
                            std::shared_ptr<const PatternBasis> j_basis, std::vector<LatticeArray> bhat) {
    FilterBank fb;
    fb.offsets = coset_offsets(*j_basis, *n_basis, *m_basis);
    if (static_cast<std::int64_t>(bhat.size()) != j_basis->size())
        throw ShapeMismatch("a filter bank needs |det J| filters");
    for (const auto& b : bhat) check_bank_input(b, *m_basis, Domain::Frequency, "filters must live on G(M^T)");

    const auto& m_shape = m_basis->cycle_lengths;
    const std::int64_t n = n_basis->size();
    const std::int64_t q = j_basis->size();
    const LongMatrix projection = frequency_projection(*n_basis, *m_basis);
    fb.coset_table.resize(static_cast<std::size_t>(n * q));
    for (std::int64_t mu = 0; mu < n; ++mu) {
        const MultiIndex base = projection * unflatten(mu, n_basis->cycle_lengths);
        for (std::int64_t l = 0; l < q; ++l)
            fb.coset_table[static_cast<std::size_t>(mu * q + l)] =
                flatten(reduce_index(base + fb.offsets[static_cast<std::size_t>(l)], m_shape), m_shape);
    }
    fb.m_basis = std::move(m_basis);
    fb.n_basis = std::move(n_basis);
    fb.j_basis = std::move(j_basis);
    fb.bhat = std::move(bhat);
    return fb;
}

double isometry_defect(const FilterBank& fb) {
    const std::int64_t q = fb.branch_count();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    double worst = 0.0;
    Eigen::MatrixXcd a(q, q);
    for (std::int64_t mu = 0; mu < fb.n_basis->size(); ++mu) {
        for (std::int64_t j = 0; j < q; ++j)
            for (std::int64_t l = 0; l < q; ++l)
                a(j, l) = scale * std::conj(fb.bhat[static_cast<std::size_t>(j)].values(fb.coset_index(mu, l)));
        worst = std::max(worst, (a * a.adjoint() - Eigen::MatrixXcd::Identity(q, q)).cwiseAbs().maxCoeff());
    }
    return worst;
}

WaveletCoefficients decompose_step(const LatticeArray& ahat, const FilterBank& fb, unsigned threads) {
    check_bank_input(ahat, *fb.m_basis, Domain::Frequency, "decomposition expects frequency data on G(M^T)");
    const std::int64_t q = fb.branch_count();
    const std::int64_t n = fb.n_basis->size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    WaveletCoefficients out;
    for (std::int64_t j = 0; j < q; ++j) out.branches.push_back(LatticeArray::zeros(fb.n_basis, Domain::Frequency));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end, unsigned) {
        for (auto mu = static_cast<std::int64_t>(begin); mu < static_cast<std::int64_t>(end); ++mu) {
            for (std::int64_t j = 0; j < q; ++j) {
                const auto& b = fb.bhat[static_cast<std::size_t>(j)].values;
                Complex acc(0.0, 0.0);
                for (std::int64_t l = 0; l < q; ++l) {
                    const std::int64_t k = fb.coset_index(mu, l);
                    acc += std::conj(b(k)) * ahat.values(k);
                }
                out.branches[static_cast<std::size_t>(j)].values(mu) = scale * acc;
            }
        }
    });
    return out;
}

LatticeArray reconstruct_step(const WaveletCoefficients& dhat, const FilterBank& fb, unsigned threads) {
    const std::int64_t q = fb.branch_count();
    if (static_cast<std::int64_t>(dhat.branches.size()) != q) throw ShapeMismatch("branch count does not match J");
    for (const auto& d : dhat.branches)
        check_bank_input(d, *fb.n_basis, Domain::Frequency, "reconstruction expects frequency data on G(N^T)");
    const std::int64_t n = fb.n_basis->size();
    const double scale = 1.0 / std::sqrt(static_cast<double>(q));
    LatticeArray out = LatticeArray::zeros(fb.m_basis, Domain::Frequency);
    // Every M-index belongs to exactly one (mu, l), so the writes are disjoint.
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end, unsigned) {
        for (auto mu = static_cast<std::int64_t>(begin); mu < static_cast<std::int64_t>(end); ++mu) {
            for (std::int64_t l = 0; l < q; ++l) {
                const std::int64_t k = fb.coset_index(mu, l);
                Complex acc(0.0, 0.0);
                for (std::int64_t j = 0; j < q; ++j)
                    acc += fb.bhat[static_cast<std::size_t>(j)].values(k) *
                           dhat.branches[static_cast<std::size_t>(j)].values(mu);
                out.values(k) = scale * acc;
            }
        }
    });
    return out;
}

WaveletCoefficients full_analysis(const LatticeArray& a, const FilterBank& fb, unsigned threads) {
    const FourierPlan m_plan(fb.m_basis, threads);
    const FourierPlan n_plan(fb.n_basis, threads);
    WaveletCoefficients dhat = decompose_step(fft_pattern(a, m_plan), fb, threads);
    for (auto& branch : dhat.branches) branch = ifft_pattern(branch, n_plan);
    return dhat;
}

LatticeArray synthesis(const WaveletCoefficients& d, const FilterBank& fb, unsigned threads) {
    const FourierPlan m_plan(fb.m_basis, threads);
    const FourierPlan n_plan(fb.n_basis, threads);
    WaveletCoefficients dhat;
    for (const auto& branch : d.branches) dhat.branches.push_back(fft_pattern(branch, n_plan));
    return ifft_pattern(reconstruct_step(dhat, fb, threads), m_plan);
}

namespace {

void check_chain(const std::vector<FilterBank>& chain) {
    if (chain.empty()) throw BadFactorization("empty decomposition chain");
    for (std::size_t k = 1; k < chain.size(); ++k)
        if (!same_basis(*chain[k].m_basis, *chain[k - 1].n_basis))
            throw BadFactorization("level " + std::to_string(k) + " does not decompose the previous N");
}

} // namespace

MultilevelDecomposition multilevel(const LatticeArray& a, const std::vector<FilterBank>& chain, unsigned threads) {
    check_chain(chain);
    MultilevelDecomposition out;
    LatticeArray current = fft_pattern(a, FourierPlan(chain.front().m_basis, threads));
    for (const auto& fb : chain) {
        // Re-tag the first branch so the next level sees its own basis object.
        current.basis = fb.m_basis;
        WaveletCoefficients dhat = decompose_step(current, fb, threads);
        const FourierPlan n_plan(fb.n_basis, threads);
        std::vector<LatticeArray> level;
        for (std::size_t j = 1; j < dhat.branches.size(); ++j) level.push_back(ifft_pattern(dhat.branches[j], n_plan));
        out.details.push_back(std::move(level));
        current = std::move(dhat.branches.front());
    }
    out.approximation = ifft_pattern(current, FourierPlan(chain.back().n_basis, threads));
    return out;
}

LatticeArray multilevel_reconstruct(const MultilevelDecomposition& dec, const std::vector<FilterBank>& chain,
                                    unsigned threads) {
    check_chain(chain);
    if (dec.details.size() != chain.size()) throw ShapeMismatch("level count does not match the chain");
    LatticeArray current = fft_pattern(dec.approximation, FourierPlan(chain.back().n_basis, threads));
    for (std::size_t k = chain.size(); k-- > 0;) {
        const FilterBank& fb = chain[k];
        const FourierPlan n_plan(fb.n_basis, threads);
        WaveletCoefficients dhat;
        current.basis = fb.n_basis;
        dhat.branches.push_back(std::move(current));
        for (const auto& detail : dec.details[k]) dhat.branches.push_back(fft_pattern(detail, n_plan));
        current = reconstruct_step(dhat, fb, threads);
    }
    return ifft_pattern(current, FourierPlan(chain.front().m_basis, threads));
}

} // namespace latfft
