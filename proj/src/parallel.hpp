#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace allroots::detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Splits [0, count) into contiguous chunks of at least `grain` items, at most
// one per worker, and runs body(begin, end) on each. Chunk boundaries depend
// only on count, workers and grain.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body, std::size_t grain = 4096) {
    workers = resolve_workers(workers);
    if (count == 0) return;
    std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(1, count / std::max<std::size_t>(grain, 1)));
    if (chunks <= 1) {
        body(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(chunks - 1);
    std::size_t per = count / chunks;
    std::size_t extra = count % chunks;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        std::size_t end = begin + per + (c < extra ? 1 : 0);
        if (c + 1 == chunks)
            body(begin, end);
        else
            threads.emplace_back([&body, begin, end] { body(begin, end); });
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace allroots::detail
