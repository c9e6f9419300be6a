#pragma once

// Counter-based random numbers: every draw is a pure function of
// (seed, replica, counter), so replicas are reproducible independently of
// evaluation order and thread count.

#include <cstdint>

namespace fppkit {

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline uint64_t counter_hash(uint64_t seed, uint64_t replica, uint64_t counter) {
    uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ull);
    h = mix64(h ^ (replica + 0xD1B54A32D192ED03ull) * 0x8CB92BA72F3D8DD7ull);
    return mix64(h ^ (counter + 0x2545F4914F6CDD1Dull) * 0x9E3779B97F4A7C15ull);
}

// Uniform double in [0, 1) with 53 random bits.
inline double counter_uniform(uint64_t seed, uint64_t replica, uint64_t counter) {
    return double(counter_hash(seed, replica, counter) >> 11) * 0x1.0p-53;
}

// Derive an independent stream id from a master seed and a small tag; used
// when one run needs several unrelated replica families.
inline uint64_t derive_seed(uint64_t seed, uint64_t tag) {
    return counter_hash(seed, 0x5eedf00dull, tag);
}

} // namespace fppkit
