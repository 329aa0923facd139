#include "ealab/bitstring.hpp"

#include <stdexcept>

namespace ealab {

BitString BitString::from_string(std::string_view s) {
    BitString out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] != '0' && s[i] != '1') throw std::invalid_argument("bit string must be over {0,1}");
        out.bits_[i] = static_cast<std::uint8_t>(s[i] - '0');
    }
    return out;
}

BitString BitString::from_code(std::uint64_t code, std::size_t n) {
    BitString out(n);
    for (std::size_t i = 0; i < n; ++i) out.bits_[i] = static_cast<std::uint8_t>(code >> (n - 1 - i) & 1u);
    return out;
}

BitString BitString::all_ones(std::size_t n) {
    BitString out(n);
    for (auto& b : out.bits_) b = 1;
    return out;
}

BitString BitString::random(std::size_t n, Rng& rng) {
    BitString out(n);
    for (auto& b : out.bits_) b = static_cast<std::uint8_t>(rng.next_below(2));
    return out;
}

std::uint64_t BitString::code() const {
    std::uint64_t c = 0;
    for (std::uint8_t b : bits_) c = (c << 1) | b;
    return c;
}

std::string BitString::to_string() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = static_cast<char>('0' + bits_[i]);
    return s;
}

int leading_ones(const BitString& s) {
    int lo = 0;
    for (std::uint8_t b : s.raw()) {
        if (b == 0) break;
        ++lo;
    }
    return lo;
}

int one_count(const BitString& s) {
    int ones = 0;
    for (std::uint8_t b : s.raw()) ones += b;
    return ones;
}

int evaluate(Problem problem, const BitString& s) {
    return problem == Problem::LeadingOnes ? leading_ones(s) : one_count(s);
}

bool is_optimal(Problem problem, const BitString& s) {
    return evaluate(problem, s) == static_cast<int>(s.size());
}

}  // namespace ealab
