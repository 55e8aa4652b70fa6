#pragma once

#include <cstdint>
#include <random>

#include "peglab/numerics.hpp"

namespace peglab {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic PRNG. Normal variates come from the inverse normal CDF so
/// streams are reproducible across standard libraries (std::normal_distribution
/// is implementation-defined).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on (0, 1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double normal() { return normal_quantile(uniform()); }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

/// Independent child seed for path/replication `index` of a master seed.
inline std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(splitmix64(master) ^ (0xD1B54A32D192ED03ULL * (index + 1)));
}

}  // namespace peglab
