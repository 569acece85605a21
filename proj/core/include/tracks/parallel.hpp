#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace tracks {

/// Evaluates fn(i) for i in [0, n) on up to `threads` workers. Results land in input order
/// and the exception of the lowest failing index is rethrown, so the outcome does not
/// depend on the thread count.
template <typename F>
auto parallel_map(std::size_t n, std::size_t threads, F&& fn) -> std::vector<decltype(fn(std::size_t{}))>
{
    using T = decltype(fn(std::size_t{}));
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::max<std::size_t>(1, std::min(threads, n));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            out[i] = fn(i);
        return out;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++)
        {
            try
            {
                out[i] = fn(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 1; t < workers; ++t)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return out;
}

} // namespace tracks
