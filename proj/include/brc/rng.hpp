#pragma once

#include <cstdint>

namespace brc {

/// Deterministic 64-bit generator (splitmix). Same seed, same stream, on
/// every platform; this is what makes encode/break/verify runs replayable.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, bound) by rejection; bound must be nonzero.
    uint64_t below(uint64_t bound) {
        const uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            uint64_t v = next();
            if (v < limit) return v % bound;
        }
    }

private:
    uint64_t state_;
};

} // namespace brc
