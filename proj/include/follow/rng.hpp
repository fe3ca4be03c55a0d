#ifndef FOLLOW_RNG_HPP
#define FOLLOW_RNG_HPP

#include <cstdint>
#include <random>

namespace follow {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic random source. All draws go through hand-rolled mappings
/// (std distributions are implementation-defined and would break
/// reproducibility of traces across standard libraries).
class RandomEngine {
public:
    explicit RandomEngine(std::uint64_t seed) : gen_(mix(seed)) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform in [0, 1).
    double uniform01() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [lo, hi] inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        // Rejection to kill modulo bias.
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % span);
    }

    bool bernoulli(double p) { return uniform01() < p; }

    /// Derive an independent child stream; the parent advances by one draw.
    RandomEngine split() { return RandomEngine(next_u64()); }

    /// Derive a child stream keyed by an index without consuming parent state
    /// (used to give bench cells schedule-independent seeds).
    static RandomEngine keyed(std::uint64_t seed, std::uint64_t key) {
        std::uint64_t s = seed;
        (void)splitmix64(s);
        s ^= 0x632be59bd9b4e019ULL * (key + 1);
        return RandomEngine(splitmix64(s));
    }

private:
    static std::uint64_t mix(std::uint64_t seed) {
        // One splitmix step so that small consecutive seeds diverge.
        return splitmix64(seed);
    }
    std::mt19937_64 gen_;
};

}  // namespace follow

#endif
