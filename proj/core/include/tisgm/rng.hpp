#ifndef TISGM_RNG_HPP
#define TISGM_RNG_HPP

#include <cstdint>
#include <span>

namespace tisgm {

/// Identifier written into sampler outputs so runs are attributable to an
/// exact generator.
inline constexpr const char* kRngId = "splitmix64";

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Minimal seedable counter-based generator. All sampling goes through
/// this type so results are bit-reproducible across platforms (no
/// std::uniform_real_distribution, whose output is implementation-defined).
class SplitMix64 {
public:
    explicit constexpr SplitMix64(std::uint64_t seed) : state_(seed) {}

    constexpr std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    constexpr double next_double() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    /// Draw an index from a finite probability row (need not be perfectly
    /// normalized; the last index absorbs roundoff).
    int next_index(std::span<const double> probs) {
        const double u = next_double();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

private:
    std::uint64_t state_;
};

/// Decorrelated per-stream seed for (seed, stream-index) pairs, e.g. one
/// stream per sampled tree. Aggregation order then never matters.
constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed + 0x9E3779B97F4A7C15ull * (index + 1));
}

} // namespace tisgm

#endif
