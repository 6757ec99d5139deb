// Counter-based random number generation.
//
// Every draw is a pure function of (seed, stream, path, counter): the 64-bit
// words are combined through SplitMix64-style finalizer rounds.  This gives
// reproducible, order-independent streams, so path blocks can be simulated
// concurrently and results are bitwise identical for a fixed seed regardless
// of scheduling.
//
// Substream derivation:
//   key  = mix(seed ^ mix(stream))        -- one key per logical process
//   path = mix(key  ^ mix(path_index))    -- one substream per path
//   draw k of the path hashes the counter k against the path key.

#pragma once

#include <cmath>
#include <cstdint>

namespace voltail {

// Stream identifiers used by the simulation engines.
enum class RngStream : std::uint64_t {
    LogStock = 1,
    Cev = 2,
    Cir = 3,
    ComposeDiffusion = 4,
    Generic = 99,
};

namespace rng_detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace rng_detail

class PathRng {
public:
    PathRng(std::uint64_t seed, RngStream stream, std::uint64_t path_index) {
        using rng_detail::mix64;
        std::uint64_t key = mix64(seed ^ mix64(static_cast<std::uint64_t>(stream)));
        key_ = mix64(key ^ mix64(path_index));
    }

    // Uniform on (0,1), draw index `k`.
    double uniform(std::uint64_t k) const {
        std::uint64_t u = rng_detail::mix64(key_ ^ (k * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
        return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; consumes one counter slot.
    double normal(std::uint64_t k) const {
        double u1 = uniform(2 * k);
        double u2 = uniform(2 * k + 1);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

private:
    std::uint64_t key_;
};

} // namespace voltail
