#pragma once

#include <cmath>
#include <cstdint>

namespace adcast {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-seeded random stream. Cheap to construct, so every (message, bin)
/// pair gets its own stream and draws are independent of evaluation order.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b) {
        std::uint64_t s = seed;
        state_ = splitmix64(s);
        s ^= stream_a * 0xD6E8FEB86659FD93ULL;
        state_ ^= splitmix64(s);
        s ^= stream_b * 0xCA5A826395121157ULL;
        state_ ^= splitmix64(s);
        // warm-up so nearby counters decorrelate
        next();
        next();
    }

    std::uint64_t next() { return splitmix64(state_); }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1].
    double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (two uniforms per draw, no caching,
    /// keeps the stream state independent of call interleaving).
    double normal() {
        const double u1 = uniform_pos();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Poisson draw. Knuth's product method below PTRS_THRESHOLD, transformed
    /// rejection (Hoermann's PTRS) above it. Self-contained so that results
    /// do not depend on the standard library's distribution internals.
    std::int64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        if (mean < PTRS_THRESHOLD) return poisson_knuth(mean);
        return poisson_ptrs(mean);
    }

private:
    static constexpr double PTRS_THRESHOLD = 10.0;

    std::int64_t poisson_knuth(double mean) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform_pos();
        } while (p > limit);
        return k - 1;
    }

    std::int64_t poisson_ptrs(double mean) {
        const double log_mean = std::log(mean);
        const double b = 0.931 + 2.53 * std::sqrt(mean);
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform_pos();
            const double us = 0.5 - std::abs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                kf * log_mean - mean - std::lgamma(kf + 1.0)) {
                return static_cast<std::int64_t>(kf);
            }
        }
    }

    std::uint64_t state_ = 0;
};

} // namespace adcast
