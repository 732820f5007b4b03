#pragma once

#include <cstdint>

namespace catspan {

// splitmix64 (Steele/Lea/Vigna). Fixed algorithm so generated instances are
// reproducible bit-for-bit across platforms; the file format docs name it.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Plain modulo; the tiny bias is irrelevant for
    // instance generation and keeps the mapping trivially portable.
    std::uint64_t next_below(std::uint64_t bound) { return next() % bound; }
};

}  // namespace catspan
