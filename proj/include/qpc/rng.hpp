#pragma once

#include <cstdint>

#include "qpc/error.hpp"

namespace qpc {

/// Counter-splittable pseudo-random stream (SplitMix64).
///
/// Shot i of a Monte Carlo run draws from substream(master_seed, i), so tallies
/// are independent of execution order and identical for serial and parallel runs.
/// Output is fully specified by this header; no library distribution functions
/// are involved, so sequences are reproducible across platforms.
class RngStream {
public:
    explicit RngStream(uint64_t seed) : state_(mix(seed ^ 0x5851F42D4C957F2DULL)) {}

    static RngStream substream(uint64_t master_seed, uint64_t index) {
        RngStream r(0);
        r.state_ = mix(master_seed + 0x9E3779B97F4A7C15ULL * (index + 1));
        return r;
    }

    uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        return mix(state_);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p < 0.0 || p > 1.0) throw ValidationError("bernoulli: probability outside [0, 1]");
        return next_double() < p;
    }

private:
    static uint64_t mix(uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    uint64_t state_;
};

} // namespace qpc
