#pragma once

#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace logfano {

// Deterministic blocked reduction: the index range is split into a fixed
// number of blocks and block partials are combined in block order, so the
// OpenMP result is bitwise identical to the serial reference for any thread
// count.
inline constexpr int kSumBlocks = 64;

template <typename F>
double blocked_sum(long long n, F&& term) {
    if (n <= 0) return 0.0;
    int blocks = static_cast<int>(n < kSumBlocks ? n : kSumBlocks);
    std::vector<double> partial(blocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int b = 0; b < blocks; ++b) {
        long long lo = n * b / blocks, hi = n * (b + 1) / blocks;
        double s = 0.0;
        for (long long i = lo; i < hi; ++i) s += term(i);
        partial[b] = s;
    }
    double total = 0.0;
    for (int b = 0; b < blocks; ++b) total += partial[b];
    return total;
}

template <typename F>
double blocked_sum_serial(long long n, F&& term) {
    if (n <= 0) return 0.0;
    int blocks = static_cast<int>(n < kSumBlocks ? n : kSumBlocks);
    double total = 0.0;
    for (int b = 0; b < blocks; ++b) {
        long long lo = n * b / blocks, hi = n * (b + 1) / blocks;
        double s = 0.0;
        for (long long i = lo; i < hi; ++i) s += term(i);
        total += s;
    }
    return total;
}

// splitmix64, used to derive independent stream seeds from a user seed.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t stream_seed(uint64_t seed, uint64_t stream) {
    uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(s);
}

} // namespace logfano
