#pragma once

#include <cmath>
#include <cstdint>

namespace hawkes {

// xoshiro256++ with SplitMix64 seeding. Substreams derived from (seed, stream)
// are used for replica-parallel runs: same seed + stream index always yields
// the same draw sequence, independent of thread scheduling or platform.
class Rng {
public:
    static Rng substream(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t x = seed ^ (0x9E3779B97F4A7C15ULL * (stream + 1));
        Rng r;
        for (auto& w : r.s_) w = splitmix64(x);
        if ((r.s_[0] | r.s_[1] | r.s_[2] | r.s_[3]) == 0) r.s_[3] = 1;
        return r;
    }

    static Rng seeded(std::uint64_t seed) { return substream(seed, 0); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53-bit mantissa.
    double uniform() {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given rate; strictly positive rate required.
    double exponential(double rate) {
        // 1 - uniform() lies in (0, 1], so the log argument never vanishes.
        return -std::log(1.0 - uniform()) / rate;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t s_[4] = {1, 2, 3, 4};
};

}  // namespace hawkes
