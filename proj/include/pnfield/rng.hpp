#pragma once

#include <cstdint>

namespace pnfield {

/// SplitMix64: state advances by 0x9E3779B97F4A7C15, output is the
/// multiply-xor-shift finalizer with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
/// These constants are part of the file-format contract; seeded epimorphisms
/// are reproducible across platforms and implementations.
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    constexpr std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound) by rejection of the top partial block; bound > 0.
    constexpr std::uint64_t below(std::uint64_t bound) noexcept {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next();
        while (x >= limit) x = next();
        return x % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace pnfield
