// Counter-based random streams: every (seed, index) pair names an
// independent, reproducible stream, so parallel consumers draw identical
// values no matter how work is scheduled.
#pragma once

#include <cstdint>

namespace charsum {

struct SplitMix64 {
    uint64_t state;

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased-to-2^-64 integer in [0, bound) via the multiply-shift trick.
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    double uniform01() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
};

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stream for item `index` under a master seed.
inline SplitMix64 derive_stream(uint64_t seed, uint64_t index) {
    return SplitMix64{mix64(seed ^ 0x6A09E667F3BCC909ull) ^
                      mix64(index + 0x9E3779B97F4A7C15ull)};
}

}  // namespace charsum
