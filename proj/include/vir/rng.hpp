#ifndef VIR_RNG_HPP
#define VIR_RNG_HPP

#include <cstdint>
#include <random>

#include "vir/rational.hpp"

namespace vir {

/// Deterministic splittable randomness: the base seed is mixed with stream
/// labels so independent trials draw independent, reproducible streams.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : base_(mix(seed)), engine_(base_) {}

    Rng split(std::uint64_t label) const { return Rng(base_ ^ (0x9e3779b97f4a7c15ULL + label)); }

    long uniform(long lo, long hi) { // inclusive
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }

    /// Uniform small rational, |numerator| <= 9, denominator <= 9.
    Rational rational() { return Rational(uniform(-9, 9), uniform(1, 9)); }

    Rational nonzero_rational() {
        while (true) {
            Rational r = rational();
            if (!r.is_zero()) return r;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t x) { // splitmix64 finalizer
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    std::uint64_t base_;
    std::mt19937_64 engine_;
};

} // namespace vir

#endif
