// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

#include "vitsqueeze/errors.hpp"

namespace vitsq {

// Splits [0, count) into `threads` contiguous chunks and runs fn(begin, end,
// chunk_index) on each. Partial results must be keyed by chunk_index and
// combined by the caller in chunk order, so a run is reproducible for a fixed
// thread count. threads == 1 runs inline (bitwise identical to a plain loop).
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
    if (threads < 1) throw ParamError("parallel_chunks: threads must be >= 1");
    const std::size_t n_chunks =
        std::min<std::size_t>(static_cast<std::size_t>(threads), std::max<std::size_t>(count, 1));
    if (n_chunks <= 1) {
        fn(std::size_t{0}, count, std::size_t{0});
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(n_chunks);
    const std::size_t base = count / n_chunks;
    const std::size_t extra = count % n_chunks;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < n_chunks; ++c) {
        const std::size_t len = base + (c < extra ? 1 : 0);
        const std::size_t end = begin + len;
        workers.emplace_back([&fn, begin, end, c] { fn(begin, end, c); });
        begin = end;
    }
    for (auto& w : workers) w.join();
}

}  // namespace vitsq
