#pragma once

#include <cstdint>
#include <random>

namespace plspower::mc {

// SplitMix64 output function (Steele, Lea & Flood 2014).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

// Seed of the substream for (replication, attempt) under `master`.
//
//   base  = mix(master + (replication + 1) * gamma)
//   seed  = mix(base + attempt * gamma)
//
// `attempt` is 0 for the first draw of a replication and increments on every
// degenerate-sample redraw. The mapping depends only on its arguments, so
// replications may run in any order on any thread.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t replication,
                                       std::uint64_t attempt) noexcept {
    const std::uint64_t base = splitmix64_mix(master + (replication + 1) * kGoldenGamma);
    return splitmix64_mix(base + attempt * kGoldenGamma);
}

// Per-substream generator producing standard normal variates by inversion.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform on the open interval (0, 1): (k + 0.5) / 2^53, k a 53-bit draw.
    double uniform();

    // normal_quantile(uniform()).
    double normal();

private:
    std::mt19937_64 engine_;
};

}  // namespace plspower::mc
