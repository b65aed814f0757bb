// SPDX-License-Identifier: Apache-2.0
//
// Deterministic, portable 64-bit random streams built on the SplitMix64
// mixer (Steele, Lea & Flood, "Fast splittable pseudorandom number
// generators"). Each (realization, user) pair gets its own substream derived
// from the master seed, so adding users or realizations never perturbs
// earlier draws.

#pragma once

#include <cstdint>

namespace fcapa {

struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform double in [0, 1) from the top 53 bits.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    // Uniform double in [lo, hi).
    double next_uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }
};

// Substream seed for a (realization, user) pair under a master seed. Two
// mixing rounds decorrelate the inputs before the stream starts.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t realization,
                                    std::uint64_t user) {
    SplitMix64 a(master ^ (0xA0761D6478BD642FULL * (realization + 1)));
    SplitMix64 b(a.next() ^ (0xE7037ED1A0B428DBULL * (user + 1)));
    return b.next();
}

} // namespace fcapa
