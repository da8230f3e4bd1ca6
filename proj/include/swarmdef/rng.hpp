#pragma once

#include <cmath>
#include <cstdint>

namespace swarmdef {

// SplitMix64 step. Used as the sole PRNG so streams are identical on every
// platform and compiler; the distribution templates in <random> are not.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix64(std::uint64_t x) {
    return splitmix64(x);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() { return splitmix64(state_); }

    // [0, 1)
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

    // [0, n). n must be > 0.
    std::uint32_t uniform_int(std::uint32_t n) {
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Box-Muller, two draws per call, no cached spare.
    double normal(double mean, double stddev) {
        const double u1 = 1.0 - next_double(); // (0, 1]
        const double u2 = next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t state_;
};

// Derives an independent stream seed from a master seed and up to three tags.
// Distinct tag tuples give statistically independent streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = master;
    s = mix64(s ^ (0xA0761D6478BD642Full + a));
    s = mix64(s ^ (0xE7037ED1A0B428DBull + b));
    s = mix64(s ^ (0x8EBC6AF09C88C6E3ull + c));
    return s;
}

// Fixed stream tags. Shared between the GA and the refinement loop so that
// competing pipeline arms evaluate on the same episode seed blocks.
namespace seedtag {
inline constexpr std::uint64_t init_pop = 0x11;
inline constexpr std::uint64_t eval_block = 0x22;  // per generation / iteration
inline constexpr std::uint64_t selection = 0x33;
inline constexpr std::uint64_t stage1_cell = 0x44;
inline constexpr std::uint64_t scenario = 0x55;
inline constexpr std::uint64_t sample = 0x66;
inline constexpr std::uint64_t episode_reds = 0x77;
inline constexpr std::uint64_t episode_blues = 0x88;
} // namespace seedtag

} // namespace swarmdef
