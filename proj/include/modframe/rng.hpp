#pragma once

#include "modframe/types.hpp"

#include <cmath>
#include <cstdint>

namespace modframe {

// The single seeded randomness source of this project is a SplitMix64
// counter generator: output i of stream (key) is a pure function
// finalize(key + (i+1)*GAMMA). Random access by counter, no hidden state,
// identical output regardless of threading or call interleaving.

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64_at(std::uint64_t key, std::uint64_t counter) {
    std::uint64_t z = key + (counter + 1) * kSplitMixGamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derives an independent stream key from a base seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64_at(base ^ (stream * 0xD1342543DE82EF95ULL), stream);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream_a, std::uint64_t stream_b) {
    return derive_seed(derive_seed(base, stream_a), stream_b + 0x101);
}

// Stream tags used by the experiment harness; fixed so that runs are
// reproducible from a single base seed.
inline constexpr std::uint64_t kStreamModel = 1;
inline constexpr std::uint64_t kStreamNoise = 2;
inline constexpr std::uint64_t kStreamSignal = 3;
inline constexpr std::uint64_t kStreamOmega = 4;
inline constexpr std::uint64_t kStreamPilot = 5;

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(stream == 0 ? seed : derive_seed(seed, stream)) {}

    std::uint64_t next_u64() { return splitmix64_at(key_, counter_++); }

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    /// +1 or -1 with equal probability.
    double next_sign() { return (next_u64() >> 63) ? -1.0 : 1.0; }

    /// Standard real normal via Box-Muller; consumes two counters.
    double next_gauss() {
        const double u = 1.0 - next_unit();  // (0, 1], keeps log finite
        const double r = std::sqrt(-2.0 * std::log(u));
        return r * std::cos(2.0 * kPi * next_unit());
    }

    /// Circularly symmetric complex normal with E|z|^2 = 1.
    cplx next_cgauss() {
        const double u = 1.0 - next_unit();
        const double r = std::sqrt(-std::log(u));  // so |z|^2 ~ Exp(1)
        const double t = 2.0 * kPi * next_unit();
        return cplx(r * std::cos(t), r * std::sin(t));
    }

    /// Uniform point on the complex unit circle.
    cplx next_steinhaus() {
        const double t = 2.0 * kPi * next_unit();
        return cplx(std::cos(t), std::sin(t));
    }

    /// Uniform integer in [0, bound) by rejection; bound must be positive.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace modframe
