#pragma once

#include <cmath>
#include <cstdint>

namespace loggas {

/// Deterministic RNG used everywhere in the project. Wraps splitmix64-seeded
/// xoshiro256** and hand-rolls the real-valued draws so that identical seeds
/// give bit-identical streams on every platform (std::uniform_real_distribution
/// is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the xoshiro state
        std::uint64_t z = seed;
        for (auto& s : state_) {
            z += 0x9e3779b97f4a7c15ULL;
            std::uint64_t w = z;
            w = (w ^ (w >> 30)) * 0xbf58476d1ce4e5b9ULL;
            w = (w ^ (w >> 27)) * 0x94d049bb133111ebULL;
            s = w ^ (w >> 31);
        }
        has_cached_normal_ = false;
        cached_normal_ = 0.0;
    }

    /// Independent substream for (seed, stream-index) pairs, e.g. parallel chains.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed * 0x9e3779b97f4a7c15ULL + index * 0xd1342543de82ef95ULL + 1ULL);
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller (cached pair).
    double normal() {
        if (has_cached_normal_) {
            has_cached_normal_ = false;
            return cached_normal_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925287 * u2;
        cached_normal_ = r * std::sin(a);
        has_cached_normal_ = true;
        return r * std::cos(a);
    }

private:
    std::uint64_t state_[4];
    bool has_cached_normal_;
    double cached_normal_;
};

}  // namespace loggas
