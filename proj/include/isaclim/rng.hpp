#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "isaclim/constants.hpp"

namespace isaclim {

/// Deterministic, platform-independent PRNG (xoshiro256++ seeded via splitmix64).
/// Standard-library distributions are implementation-defined, so the normal
/// generator is a fixed Box-Muller transform to keep frozen test values and
/// sweep outputs byte-stable.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
        have_cached_ = false;
    }

    /// Independent stream derived from (master seed, stream index).
    static Rng derive(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t x = master;
        std::uint64_t a = splitmix64(x);
        std::uint64_t y = stream + 0x9E3779B97F4A7C15ULL;
        std::uint64_t b = splitmix64(y);
        return Rng(a ^ (b + 0x2545F4914F6CDD1DULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal (Box-Muller, cached pair).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        cached_ = r * std::sin(2.0 * pi * u2);
        have_cached_ = true;
        return r * std::cos(2.0 * pi * u2);
    }

    /// Circularly symmetric complex Gaussian with E|z|^2 = variance.
    std::complex<double> cnormal(double variance = 1.0) {
        const double s = std::sqrt(variance / 2.0);
        const double re = normal();
        const double im = normal();
        return {s * re, s * im};
    }

private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        x += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = x;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
};

} // namespace isaclim
