// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The latfft Authors

#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace latfft {

/// Worker count used when a caller passes 0.
inline unsigned default_thread_count() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Runs body(begin, end, worker) over a static partition of [0, count) into
/// at most `threads` contiguous chunks. Chunk boundaries depend only on
/// (count, threads), so the work each index sees is schedule independent.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
    if (threads == 0) threads = default_thread_count();
    const std::size_t workers = std::min<std::size_t>(threads, count);
    if (workers <= 1) {
        if (count > 0) body(std::size_t{0}, count, 0u);
        return;
    }
    const std::size_t chunk = count / workers;
    const std::size_t extra = count % workers;
    auto bounds = [&](std::size_t w) {
        const std::size_t begin = w * chunk + std::min(w, extra);
        return std::pair{begin, begin + chunk + (w < extra ? 1 : 0)};
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const auto [b, e] = bounds(w);
        pool.emplace_back([&body, b, e, w] { body(b, e, static_cast<unsigned>(w)); });
    }
    const auto [b0, e0] = bounds(0);
    body(b0, e0, 0u);
}

} // namespace latfft
