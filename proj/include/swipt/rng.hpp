#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <utility>

namespace swipt {

inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// xoshiro256** (Blackman and Vigna). State is seeded from SplitMix64 so an
/// all-zero state cannot occur.
class Xoshiro256 {
public:
    explicit Xoshiro256(std::uint64_t seed) noexcept {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    /// Frame substream: the key mixes seed and index through SplitMix64 before
    /// seeding, so neighbouring indices give unrelated streams.
    static Xoshiro256 substream(std::uint64_t seed, std::uint64_t index) noexcept {
        std::uint64_t k = index;
        const std::uint64_t mixed = splitmix64(k);
        return Xoshiro256(seed ^ mixed);
    }

    std::uint64_t next() noexcept {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    double uniform() noexcept { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    int sign_bit() noexcept { return (next() >> 63) ? -1 : 1; }

    /// Two independent standard normals (Box-Muller).
    std::pair<double, double> normal_pair() noexcept {
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double a = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(a), r * std::sin(a)};
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> complex_normal(double variance) noexcept {
        const auto [x, y] = normal_pair();
        const double sd = std::sqrt(0.5 * variance);
        return {sd * x, sd * y};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace swipt
