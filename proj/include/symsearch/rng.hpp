#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

namespace symsearch {

/// xoshiro256** with splitmix64 seeding. Hand-rolled (rather than <random>)
/// so that streams are identical across standard libraries and the full
/// state can be captured in checkpoints.
class Rng {
public:
    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    void reseed(uint64_t seed) {
        uint64_t x = seed;
        for (auto& s : state_) s = splitmix64(x);
        cached_normal_valid_ = false;
        cached_normal_ = 0.0;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform in [0, 1).
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). n must be > 0.
    uint64_t below(uint64_t n) {
        // multiply-shift; bias is negligible for the n used here
        return uint64_t((__uint128_t(next_u64()) * n) >> 64);
    }

    /// Standard normal via Box-Muller (deterministic across platforms).
    double normal() {
        if (cached_normal_valid_) {
            cached_normal_valid_ = false;
            return cached_normal_;
        }
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 6.283185307179586476925286766559 * u2;
        cached_normal_ = r * std::sin(theta);
        cached_normal_valid_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double stddev) { return mean + stddev * normal(); }

    bool bernoulli(double p) { return uniform() < p; }

    /// Derive an independent stream; does not disturb this stream's state
    /// beyond one draw.
    Rng fork() { return Rng(next_u64()); }

    std::array<uint64_t, 5> save_state() const {
        return {state_[0], state_[1], state_[2], state_[3],
                cached_normal_valid_ ? 1u : 0u};
    }

    void restore_state(const std::array<uint64_t, 5>& s, double cached_normal = 0.0) {
        state_ = {s[0], s[1], s[2], s[3]};
        cached_normal_valid_ = s[4] != 0;
        cached_normal_ = cached_normal;
    }

    double cached_normal_value() const { return cached_normal_; }

private:
    static uint64_t splitmix64(uint64_t& x) {
        uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<uint64_t, 4> state_{};
    bool cached_normal_valid_ = false;
    double cached_normal_ = 0.0;
};

}  // namespace symsearch
