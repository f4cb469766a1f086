#pragma once

#include <cmath>
#include <cstdint>

namespace gpbandit {

namespace detail {

// SplitMix64 step: advances the state by the golden-ratio increment and
// returns a well-mixed 64-bit word.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

/// Mixes up to three seed components into one child seed. Used to derive
/// independent streams from (master seed, purpose tag, index) triples so that
/// adding or removing draws in one component never perturbs another.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = a;
    std::uint64_t h = detail::splitmix64_next(s);
    s = h ^ (b + 0xD1B54A32D192ED03ULL);
    h = detail::splitmix64_next(s);
    s = h ^ (c + 0x8CB92BA72F3D8DD7ULL);
    return detail::splitmix64_next(s);
}

/// Counter-based pseudo-random stream. Cheap to construct, so the harness
/// makes one per (seed, purpose, round) instead of sharing state.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : base_(seed), state_(seed) {}

    std::uint64_t next_u64() { return detail::splitmix64_next(state_); }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal draw via Box-Muller. No spare value is cached, so a
    /// copied stream replays identically.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    /// Child stream keyed off this stream's base seed (not its current state),
    /// so derivation order does not matter.
    RngStream derive(std::uint64_t tag, std::uint64_t index = 0) const {
        return RngStream(mix_seed(base_, tag, index));
    }

    std::uint64_t base_seed() const { return base_; }

private:
    std::uint64_t base_;
    std::uint64_t state_;
};

}  // namespace gpbandit
