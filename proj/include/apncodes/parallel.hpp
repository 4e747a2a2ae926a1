#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace apncodes {

unsigned resolve_threads(unsigned requested);

// Splits [0, count) into contiguous chunks, runs `work(begin, end)` on up to
// `threads` workers and returns the per-chunk results in chunk order, so the
// caller's merge sees the same sequence regardless of scheduling.
template <class Result>
std::vector<Result> parallel_chunks(std::size_t count, unsigned threads,
                                    const std::function<Result(std::size_t, std::size_t)>& work) {
    threads = resolve_threads(threads);
    std::size_t chunks = std::min<std::size_t>(count == 0 ? 1 : count, std::size_t(threads) * 4);
    std::vector<Result> results(chunks);
    std::vector<std::exception_ptr> errors(chunks);
    auto run = [&](std::size_t c) {
        std::size_t begin = count * c / chunks;
        std::size_t end = count * (c + 1) / chunks;
        try {
            results[c] = work(begin, end);
        } catch (...) {
            errors[c] = std::current_exception();
        }
    };
    if (threads <= 1 || chunks == 1) {
        for (std::size_t c = 0; c < chunks; ++c) run(c);
    } else {
        std::vector<std::thread> pool;
        std::size_t workers = std::min<std::size_t>(threads, chunks);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t c = w; c < chunks; c += workers) run(c);
            });
        }
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

}  // namespace apncodes
