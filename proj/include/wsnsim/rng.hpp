#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace wsnsim {

// SplitMix64 finalizer. Cheap, full avalanche.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Independent stream seed for (master, stream). Streams are spaced by the
// golden-ratio increment before mixing, so consecutive indices give
// uncorrelated seeds and trials can be reordered or run in parallel.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
    return mix64(master + (stream + 1) * 0x9e3779b97f4a7c15ULL);
}

// Deterministic RNG. mt19937_64 output is fully specified by the standard;
// the helpers below replace std::uniform_* distributions, whose sequences
// differ between standard libraries, so seeded runs are bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, n); rejection sampling, no modulo bias.
    std::size_t next_index(std::size_t n) {
        assert(n > 0);
        const std::uint64_t bound = n;
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = engine_();
            if (r >= threshold) return static_cast<std::size_t>(r % bound);
        }
    }

    // True with probability p. p >= 1 always accepts since next_double() < 1.
    bool chance(double p) { return next_double() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace wsnsim
