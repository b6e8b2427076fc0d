#pragma once

#include <cstdint>
#include <limits>

namespace lapdiag {

/**
 * PCG32 (XSH-RR output, 64-bit LCG state). The stream id selects the LCG
 * increment, so (seed, stream) pairs give independent, reproducible
 * sequences. Each spanning-tree sample uses stream = sample index.
 */
class Pcg32 {
public:
    using result_type = std::uint32_t;

    Pcg32(std::uint64_t seed = 0x853c49e6748fea9bULL, std::uint64_t stream = 0xda3e39cb94b95bdbULL) {
        seed_stream(seed, stream);
    }

    void seed_stream(std::uint64_t seed, std::uint64_t stream) {
        state_ = 0;
        inc_ = (stream << 1u) | 1u;
        next();
        state_ += seed;
        next();
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }

    result_type next() {
        const std::uint64_t old = state_;
        state_ = old * 6364136223846793005ULL + inc_;
        const auto xorshifted = static_cast<std::uint32_t>(((old >> 18u) ^ old) >> 27u);
        const auto rot = static_cast<std::uint32_t>(old >> 59u);
        return (xorshifted >> rot) | (xorshifted << ((-rot) & 31u));
    }

    /// Uniform integer in [0, bound) without modulo bias (Lemire's method).
    std::uint32_t bounded(std::uint32_t bound) {
        std::uint64_t product = static_cast<std::uint64_t>(next()) * bound;
        auto low = static_cast<std::uint32_t>(product);
        if (low < bound) {
            const std::uint32_t threshold = (-bound) % bound;
            while (low < threshold) {
                product = static_cast<std::uint64_t>(next()) * bound;
                low = static_cast<std::uint32_t>(product);
            }
        }
        return static_cast<std::uint32_t>(product >> 32u);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        const std::uint64_t hi = next() >> 5u;
        const std::uint64_t lo = next() >> 6u;
        return static_cast<double>((hi << 26u) | lo) * 0x1.0p-53;
    }

    bool operator==(const Pcg32 &) const = default;

private:
    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
};

} // namespace lapdiag
