#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ealab/rng.hpp"

namespace ealab {

enum class Problem { LeadingOnes, OneMax };

// Fixed-length binary solution. Positions are 1-based and scanned left to
// right, so position 1 is the leftmost bit.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n) : bits_(n, 0) {}

    static BitString from_string(std::string_view s);
    static BitString from_code(std::uint64_t code, std::size_t n);
    static BitString all_ones(std::size_t n);
    static BitString random(std::size_t n, Rng& rng);

    std::size_t size() const { return bits_.size(); }
    int bit(std::size_t pos) const { return bits_[pos - 1]; }
    void set_bit(std::size_t pos, int v) { bits_[pos - 1] = static_cast<std::uint8_t>(v); }
    void flip(std::size_t pos) { bits_[pos - 1] ^= 1; }

    // Integer encoding with position a mapped to bit (n - a); the binary
    // literal of the code reads the same as the string. Requires n <= 63.
    std::uint64_t code() const;

    std::string to_string() const;
    const std::vector<std::uint8_t>& raw() const { return bits_; }
    std::vector<std::uint8_t>& raw() { return bits_; }

    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

int leading_ones(const BitString& s);
int one_count(const BitString& s);
int evaluate(Problem problem, const BitString& s);
bool is_optimal(Problem problem, const BitString& s);

// Code-level counterparts used by the exact chain machinery (n <= 63).
inline int ones_of_code(std::uint64_t c) { return std::popcount(c); }

inline int lo_of_code(std::uint64_t c, int n) {
    int lo = 0;
    while (lo < n && (c >> (n - 1 - lo) & 1u) != 0) ++lo;
    return lo;
}

inline int evaluate_code(Problem problem, std::uint64_t c, int n) {
    return problem == Problem::LeadingOnes ? lo_of_code(c, n) : ones_of_code(c);
}

inline std::uint64_t optimum_code(int n) { return (n == 64) ? ~0ULL : ((1ULL << n) - 1); }

// Named pair of solutions; offspring inherit the slot of their parent.
struct Population {
    BitString s1;
    BitString s2;
};

}  // namespace ealab
