#pragma once

#include <cstdint>
#include <random>

namespace cadlag {

/// splitmix64 step; the standard 64-bit mixer.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Stream seed for one replication: a mix of the experiment seed and the
/// replication index, so streams are independent of evaluation order and of
/// any other parameter.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t rep) {
    std::uint64_t s = seed;
    const std::uint64_t a = splitmix64(s);
    s = rep ^ 0xd6e8feb86659fd93ULL;
    const std::uint64_t b = splitmix64(s);
    s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(s);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t rep) {
    return std::mt19937_64(stream_seed(seed, rep));
}

} // namespace cadlag
