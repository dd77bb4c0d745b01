// Deterministic data-parallel helpers. Work is split into fixed-size chunks
// whose boundaries depend only on the problem size; per-chunk results are
// combined in chunk order, so every reduction is bitwise identical for any
// worker count.
#pragma once

#include <cstddef>
#include <functional>

namespace charsum {

// Worker count resolution: explicit argument > CHARSUM_THREADS env variable
// > hardware concurrency.
int resolve_thread_count(int requested = 0);

// Invokes fn(chunk_index, begin, end) for every chunk of [0, n) with the
// given chunk size. Chunks are claimed dynamically but identified by index,
// so callers can store per-chunk results and fold them in order.
void parallel_chunks(std::size_t n, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

// Kahan-compensated accumulator; used both inside chunks and for the
// in-order fold over chunk partials.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double value) {
        double y = value - carry;
        double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace charsum
