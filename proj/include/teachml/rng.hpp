#pragma once

#include <cstdint>

namespace teachml {

// SplitMix64 step. Used both as the core generator and to derive
// per-tree / per-stage seeds from a master seed, so serial and parallel
// training see identical streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic mixing of a master seed with a stream index.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

// Small self-contained PRNG. std::shuffle / std::*_distribution are
// implementation-defined across standard libraries; everything here is
// fully specified so seeded results are identical on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t bounded(std::uint64_t n) {
        if (n < 2) return 0;
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % n;
    }

    // Uniform double in [0, 1) with 53 bits of precision.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    // Uniform integer in [lo, hi], inclusive.
    long uniform_int(long lo, long hi) {
        return lo + static_cast<long>(bounded(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

}  // namespace teachml
