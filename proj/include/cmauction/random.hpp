#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cmauction {

// std::mt19937_64 output is fixed by the standard, but the standard
// distributions are not; everything below is spelled out so that results are
// bit-identical across standard libraries.
using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Independent stream for (seed, stream) pairs; used to shard work so that
// results do not depend on how trials are grouped.
inline Engine derived_engine(std::uint64_t seed, std::uint64_t stream) {
    return Engine(splitmix64(seed ^ splitmix64(stream)));
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Inverse-CDF sampler over a fixed probability vector.
class DiscreteSampler {
public:
    explicit DiscreteSampler(std::span<const double> probs);

    std::size_t operator()(Engine& rng) const;

private:
    std::vector<double> cdf_;
    std::size_t last_positive_ = 0;
};

} // namespace cmauction
