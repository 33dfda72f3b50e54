#ifndef EQUITEST_RNG_HPP
#define EQUITEST_RNG_HPP

#include <cstdint>

namespace equitest {

// SplitMix64 (Steele, Lea, Flood 2014; public-domain reference by Vigna,
// https://prng.di.unimi.it/splitmix64.c). Small state, full 64-bit output
// avalanche, good enough statistically for Monte Carlo replicate streams.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1); never returns an endpoint, so the
    // result is always a valid argument for an inverse CDF.
    double uniform01() {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t state_;
};

// Counter-based stream derivation: the seed of replicate `index` is a pure
// hash of (master, index), so any partitioning of replicates across workers
// reproduces the same per-replicate streams.
inline std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace equitest

#endif
