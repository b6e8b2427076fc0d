#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lapdiag {

/// Requested thread count, with 0 (or less) meaning all hardware threads.
inline int resolve_threads(int requested) {
    if (requested > 0)
        return requested;
#ifdef _OPENMP
    return std::max(1, omp_get_max_threads());
#else
    return 1;
#endif
}

/**
 * Run work(slot, begin, end) over [0, count) in chunks of `chunk` items.
 * Chunks are processed in waves of `threads`; after each wave merge(slot) is
 * called for every slot in chunk order. Since the chunk boundaries and merge
 * order do not depend on `threads`, floating-point reductions are
 * reproducible across thread counts. `slot` indexes per-worker state and is
 * in [0, threads).
 */
template <class Work, class Merge>
void ordered_chunks(std::size_t count, std::size_t chunk, int threads, Work &&work, Merge &&merge) {
    if (count == 0)
        return;
    chunk = std::max<std::size_t>(chunk, 1);
    threads = std::max(threads, 1);
    const std::size_t chunks = (count + chunk - 1) / chunk;
    const auto width = static_cast<std::size_t>(threads);
    std::vector<std::exception_ptr> errors(width);

    for (std::size_t wave = 0; wave < chunks; wave += width) {
        const auto active = static_cast<int>(std::min(width, chunks - wave));
#pragma omp parallel for num_threads(threads) schedule(static, 1)
        for (int slot = 0; slot < active; ++slot) {
            try {
                const std::size_t begin = (wave + static_cast<std::size_t>(slot)) * chunk;
                work(static_cast<std::size_t>(slot), begin, std::min(count, begin + chunk));
            } catch (...) {
                errors[static_cast<std::size_t>(slot)] = std::current_exception();
            }
        }
        for (auto &err : errors)
            if (err)
                std::rethrow_exception(err);
        for (int slot = 0; slot < active; ++slot)
            merge(static_cast<std::size_t>(slot));
    }
}

} // namespace lapdiag
