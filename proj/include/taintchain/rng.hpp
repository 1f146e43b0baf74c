#pragma once

#include <cstdint>

namespace taintchain {

/// SplitMix64 (Steele, Lea, Vigna). Small, fully specified, and portable, so
/// seeded datasets are reproducible across platforms and languages.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) via rejection sampling, bound >= 1.
    uint64_t next_below(uint64_t bound) {
        uint64_t threshold = (0 - bound) % bound;
        while (true) {
            uint64_t v = next();
            if (v >= threshold) return v % bound;
        }
    }

private:
    uint64_t state_;
};

}  // namespace taintchain
