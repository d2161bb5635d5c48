#pragma once

#include <cstdint>

namespace sglab {

// SplitMix64: a counter-based 64-bit generator (Steele, Lea, Flood 2014).
// The whole harness derives its randomness from this one generator so that
// reports are reproducible bit-for-bit across platforms and thread counts.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n) by rejection; n must be positive.
    uint64_t below(uint64_t n) {
        const uint64_t limit = ~0ull - ~0ull % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1) != 0; }

private:
    uint64_t state_;
};

// Derives an independent stream for a (seed, task) pair. Tasks are keyed by
// small tuples such as (prime, order, trial); mixing them through the
// generator itself keeps streams decorrelated and schedule-independent.
inline SplitMix64 task_rng(uint64_t seed, uint64_t a, uint64_t b = 0, uint64_t c = 0) {
    SplitMix64 mix(seed);
    uint64_t s = mix.next();
    s ^= SplitMix64(a + 0x6a09e667f3bcc909ull).next();
    s ^= SplitMix64(b + 0xbb67ae8584caa73bull).next();
    s ^= SplitMix64(c + 0x3c6ef372fe94f82bull).next();
    return SplitMix64(s);
}

} // namespace sglab
