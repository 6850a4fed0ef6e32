// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#include "latfft/bench.hpp"

#include <bit>
#include <chrono>
#include <random>

namespace latfft {

namespace {

int log2_exact(std::int64_t m) {
    if (m < 2 || !std::has_single_bit(static_cast<std::uint64_t>(m)))
        throw Unsupported("bench sizes must be powers of two >= 2");
    return std::countr_zero(static_cast<std::uint64_t>(m));
}

double seconds(const FourierPlan& plan, const LatticeArray& a, LatticeArray& sink) {
    const auto start = std::chrono::steady_clock::now();
    sink = fft_pattern(a, plan);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

IntMatrix bench_matrix(std::int64_t m, std::int64_t i) {
    const int p = log2_exact(m);
    const std::int64_t l = std::int64_t{1} << (p / 2);
    const std::int64_t k = m / l;
    if (i < 0 || i >= l) throw Unsupported("shape i must lie in [0, l)");
    LongMatrix out(2, 2);
    out << l, i, 0, k;
    return from_long(out);
}

std::vector<std::int64_t> bench_shapes(std::int64_t m) {
    const std::int64_t l = std::int64_t{1} << (log2_exact(m) / 2);
    std::vector<std::int64_t> shapes{0};
    for (std::int64_t i = 1; i < l; i *= 2) shapes.push_back(i);
    return shapes;
}

std::string BenchRow::cycles_text() const {
    std::string out = "(";
    for (std::size_t k = 0; k < cycles.size(); ++k) out += (k ? " " : "") + std::to_string(cycles[k]);
    return out + ")";
}

BenchRow run_bench(std::int64_t m, std::int64_t shape, int reps, unsigned threads, std::uint64_t seed) {
    const auto basis = std::make_shared<const PatternBasis>(build_basis(bench_matrix(m, shape)));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    LatticeArray a = LatticeArray::zeros(basis, Domain::Spatial);
    for (Eigen::Index t = 0; t < a.values.size(); ++t) a.values(t) = Complex(normal(rng), normal(rng));
    BenchRow row;
    row.shape = shape;
    row.cycles = basis->cycle_lengths;
    const FourierPlan serial(basis, 1), parallel(basis, threads);
    LatticeArray sink = fft_pattern(a, serial);  // warm-up
    sink = fft_pattern(a, parallel);
    // Alternate the two runs so that drift in machine state affects both.
    for (int r = 0; r < reps; ++r) {
        row.serial_seconds += seconds(serial, a, sink);
        row.parallel_seconds += seconds(parallel, a, sink);
    }
    row.serial_seconds /= reps;
    row.parallel_seconds /= reps;
    return row;
}

} // namespace latfft
