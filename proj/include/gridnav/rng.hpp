#pragma once

#include <cstdint>
#include <random>

namespace gridnav {

// Derives an independent stream seed from a master seed and a stream id
// (run index, net index, ...). One splitmix64 finalizer round over
// master + GOLDEN * (stream + 1). This function is part of the
// reproducibility contract documented in the README: changing it changes
// every experiment output.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t x = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

// Deterministic random stream. Wraps std::mt19937_64 (whose raw output
// sequence is pinned by the standard) and draws variates with hand-rolled
// helpers instead of std distributions, which are not portable across
// standard-library implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform integer in [0, n). Rejection sampling, no modulo bias.
    int uniform_int(int n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x = next_u64();
        while (x >= limit) x = next_u64();
        return static_cast<int>(x % bound);
    }

    // Uniform real in [0, 1) with 53-bit resolution.
    double uniform_real() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_real(); }

private:
    std::mt19937_64 engine_;
};

}  // namespace gridnav
