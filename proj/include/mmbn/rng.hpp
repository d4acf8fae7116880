#ifndef MMBN_RNG_HPP
#define MMBN_RNG_HPP

#include <cstdint>
#include <random>
#include <string>

namespace mmbn {

// Seedable generator with a fully specified algorithm so datasets are
// reproducible across implementations and platforms.
//
// Base generator: std::mt19937_64 (Mersenne Twister, 64-bit variant, as
// specified by the C++ standard). Doubles are produced by taking the top
// 53 bits of one output word: u = (x >> 11) * 2^-53, giving u in [0, 1).
// Standard-library distributions are never used (their output is
// implementation-defined).
//
// Stream splitting: substream k of seed s is seeded with
// splitmix64(s + k), where splitmix64 is the finalizer from Steele,
// Lea & Flood (2014). Substreams are used to decouple, e.g., parameter
// generation from sampling, and one experiment repetition from another.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9E3779B97F4A7C15ull;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
        return x ^ (x >> 31);
    }

    // Substream k of a master seed.
    static Rng split(std::uint64_t seed, std::uint64_t stream) {
        return Rng(splitmix64(seed + stream));
    }

    // Uniform on [0, 1), 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, n). Rejection-free modulo is fine here: n is
    // tiny (arities, node counts) relative to 2^64 so the bias is
    // negligible and the output is still fully deterministic.
    std::uint64_t uniform_below(std::uint64_t n) {
        return engine_() % n;
    }

    std::uint64_t next_u64() { return engine_(); }

    // Recorded in dataset metadata so files are self-describing.
    static std::string generator_id() { return "mt19937_64/top53+splitmix64"; }

private:
    std::mt19937_64 engine_;
};

}  // namespace mmbn

#endif
