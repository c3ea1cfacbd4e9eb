#include "exes/rng.hpp"

namespace exes {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::uint64_t derive_dyad_seed(std::uint64_t master_seed, std::string_view condition, std::uint64_t dyad_index) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ fnv1a64(condition));
    return splitmix64(h ^ dyad_index);
}

}  // namespace exes
