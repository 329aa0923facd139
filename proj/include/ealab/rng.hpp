#pragma once

#include <cstdint>

namespace ealab {

// SplitMix64 step (Steele/Lea/Vigna). One multiply-xor pipeline per draw.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based draw stream. Seeding from (master, stream) is a pure
// function of the two integers, so per-trial streams are independent of
// execution order and thread placement.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    Rng(std::uint64_t master_seed, std::uint64_t stream) : state_(derive_seed(master_seed, stream)) {}

    static std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream) {
        std::uint64_t s = master_seed;
        std::uint64_t h = splitmix64(s);
        std::uint64_t s2 = h ^ (stream * 0x9e3779b97f4a7c15ULL + 0x6a09e667f3bcc909ULL);
        return splitmix64(s2);
    }

    std::uint64_t next_u64() { return splitmix64(state_); }

    // uniform in [0, 1), 53-bit mantissa
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // uniform in [0, n); Lemire multiply-shift reduction
    std::uint32_t next_below(std::uint32_t n) {
        return static_cast<std::uint32_t>((static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    bool next_bool() { return (next_u64() >> 63) != 0; }

private:
    std::uint64_t state_;
};

}  // namespace ealab
