#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace exes {

/// Per-dyad random stream. Every stochastic decision of a dyad draws from one
/// of these, in a fixed order, so a dyad is reproducible from its seed alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal(double sigma) {
        return sigma > 0.0 ? std::normal_distribution<double>(0.0, sigma)(engine_) : 0.0;
    }
    bool coin() { return uniform() < 0.5; }

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes);

/// Stable per-dyad seed: independent of how many other conditions exist.
std::uint64_t derive_dyad_seed(std::uint64_t master_seed, std::string_view condition, std::uint64_t dyad_index);

}  // namespace exes
