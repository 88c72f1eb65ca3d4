#ifndef LOWCROSS_RNG_HPP
#define LOWCROSS_RNG_HPP

#include <cstdint>

namespace lowcross {

/// SplitMix64: the project-wide seedable, splittable PRNG. Every randomized
/// operation takes an explicit seed and consumes this stream in a fixed order,
/// so results are reproducible across platforms (std:: distributions are not).
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Independent child stream (for sub-tasks that must not perturb the
    /// parent's consumption pattern).
    SplitMix64 split() { return SplitMix64(next()); }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() { return double(next() >> 11) * 0x1.0p-53; }

    /// Unbiased uniform integer in [0, bound); bound >= 1.
    uint64_t next_below(uint64_t bound) {
        // Lemire's multiply-shift with rejection.
        uint64_t x = next();
        __uint128_t m = __uint128_t(x) * bound;
        auto lo = uint64_t(m);
        if (lo < bound) {
            uint64_t floor = (0 - bound) % bound;
            while (lo < floor) {
                x = next();
                m = __uint128_t(x) * bound;
                lo = uint64_t(m);
            }
        }
        return uint64_t(m >> 64);
    }

private:
    uint64_t state_;
};

}  // namespace lowcross

#endif
