// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include "latfft/fft.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latfft {

/// Normal form [[l, i], [0, k]] with l k = m, l = 2^floor(p/2), k = 2^ceil(p/2)
/// for m = 2^p. Throws Unsupported unless m is a power of two >= 2 and 0 <= i < l.
IntMatrix bench_matrix(std::int64_t m, std::int64_t i);

/// Shapes swept by default: 0 and the powers of two below l.
std::vector<std::int64_t> bench_shapes(std::int64_t m);

struct BenchRow {
    std::int64_t shape = 0;
    std::vector<std::int64_t> cycles;
    double serial_seconds = 0;    ///< mean over the repetitions
    double parallel_seconds = 0;  ///< mean over the repetitions
    double speedup() const { return parallel_seconds > 0 ? serial_seconds / parallel_seconds : 0; }
    std::string cycles_text() const;  ///< "(e_1 e_2 ...)"
};

/// Times fft_pattern on seeded random data with 1 and `threads` workers.
BenchRow run_bench(std::int64_t m, std::int64_t shape, int reps, unsigned threads, std::uint64_t seed);

} // namespace latfft
