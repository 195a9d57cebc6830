#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace qseclab {

// FNV-1a 64-bit. Also used for payload digests and trace checksums, so the
// exact constants are part of the reproducibility contract (see README).
constexpr std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seedable RNG stream. All simulation randomness flows through instances of
/// this class; no global state. Uses std::mt19937_64 (its sequence is fixed
/// by the standard) and avoids std distributions, whose output is
/// implementation-defined, so runs reproduce bit-for-bit across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Stream for a named actor: seed' = splitmix64(master ^ fnv1a64(name)).
    /// Streams depend only on (master seed, name), never on creation order.
    static Rng for_actor(std::uint64_t master_seed, std::string_view actor) {
        return Rng(master_seed ^ fnv1a64(actor));
    }

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    /// Fair bit (top bit of the next engine output).
    int bit() { return static_cast<int>(next_u64() >> 63); }

    /// Uniform integer in [0, bound). Rejection sampling, no modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
        std::uint64_t v;
        do {
            v = next_u64();
        } while (v >= limit);
        return v % bound;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace qseclab
